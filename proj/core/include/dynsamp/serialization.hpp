#pragma once

#include <string>

#include "dynsamp/forward_solver.hpp"
#include "dynsamp/initial_data.hpp"
#include "dynsamp/recovery.hpp"

// Interchange formats.  Initial data travels as plain JSON numbers (they
// are user-authored doubles); traces and recovery results carry their
// values as decimal strings with enough digits to reproduce the mantissa
// bit for bit, because those live at working precisions far beyond double.
// Emission is hand-rolled with a fixed key order and fixed digit counts,
// so identical inputs give byte-identical files.

namespace dynsamp {

// { "r": <number>, "coeffs": ["<decimal>", ...] }; the parser also takes
// plain numbers in coeffs, so hand-written data stays terse.
std::string datum_to_json(const InitialDatum& f);
InitialDatum datum_from_json(const std::string& text, mpfr_prec_t prec = 192);

// { "x0": "...", "times": ["...", ...], "samples": ["...", ...],
//   "mantissa_bits": n, ... } plus certificates and the rescaled fields.
std::string trace_to_json(const Trace& trace);
Trace trace_from_json(const std::string& text);

// Full audit record: recursion output, reconstruction, bounds, ledger.
std::string recovery_result_to_json(const RecoveryResult& result);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dynsamp
