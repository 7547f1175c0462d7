#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dci/perm.hpp"

namespace dci {

/// Generator text format, one permutation per line:
///
///     degree: 24                      # optional declaration
///     img: 1 2 3 4 5 6 7 0            # image list
///     cyc(8): (0 1 6 7 4 5 2 3)       # cycle form with explicit degree
///
/// Tokens are whitespace separated and `#` starts a comment. All lines must
/// agree on the degree. A file without generators is a parse error.
struct GeneratorSet {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
};

GeneratorSet parse_generators(std::istream& in);
GeneratorSet parse_generators_file(const std::string& path);

/// Writes `degree: n` followed by one `img:` line per generator. Non-empty
/// names are emitted as a `# name` comment above their generator.
void write_generators(std::ostream& out, std::size_t degree,
                      const std::vector<Permutation>& gens,
                      const std::vector<std::string>& names = {});

}  // namespace dci
