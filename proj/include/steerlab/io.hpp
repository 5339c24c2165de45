#pragma once

// JSON problem files.
//
//   {
//     "dims": {"dA": 2, "dB": 2},
//     "state": [[[re, im], ...], ...],                 // optional, row-major
//     "measurements": {"n_x": 2, "n_a": 2,
//                      "elements": [[M_00, M_01], [M_10, M_11]]},  // optional, x-major
//     "assemblage":   {"n_x": 2, "n_a": 2, "elements": [...]}      // optional
//   }
//
// Matrices are arrays of rows; each entry is a [re, im] pair. Doubles are
// written in shortest round-trip form, so write-then-read is bit exact.

#include <optional>
#include <string>
#include <string_view>

#include "steerlab/assemblage.hpp"

namespace steerlab {

struct ProblemFile {
  std::size_t dA = 0;
  std::size_t dB = 0;
  std::optional<BipartiteState> state;
  std::optional<MeasurementAssemblage> measurements;
  std::optional<StateAssemblage> assemblage;
};

/// Throws ParseError naming the offending field.
ProblemFile parse_problem(std::string_view text);

/// Throws FileError when the file cannot be read, ParseError otherwise.
ProblemFile read_problem_file(const std::string& path);

std::string serialize_problem(const ProblemFile& problem, int indent = 2);

void write_problem_file(const std::string& path, const ProblemFile& problem);

}  // namespace steerlab
