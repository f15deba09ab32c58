#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "dpercol/degrees.hpp"

namespace dpercol {

/// `j k p` per line, whitespace separated, `#` starts a comment. The
/// probabilities must sum to 1 within 1e-6; they are renormalized afterwards.
DegreeDistribution read_distribution(std::istream &in);
DegreeDistribution load_distribution(const std::string &path);

/// One `d_in d_out` pair per line; `#` comments allowed.
DegreeSequence read_sequence(std::istream &in);
DegreeSequence load_sequence(const std::string &path);
void write_sequence(std::ostream &out, const DegreeSequence &seq);

/// Resolves `poisson:<lambda>`, `const:<d>`, `geometric:<p>` or `file:<path>`.
DegreeDistribution parse_distribution_spec(std::string_view spec);

} // namespace dpercol
