#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "powlog/termalg.hpp"

namespace powlog {

/// One parsed `term` line. Tabulated units keep the table path so the file
/// round-trips; the evaluator is a log-linear interpolant over the table.
struct SumFileTerm {
  Term term;
  std::string table_path;
};

/// In-memory model of a sum file: the `domain` line plus the `term` lines in
/// file order, unnormalized. parse -> serialize -> parse is the identity.
struct SumFile {
  DomainSpec domain;
  std::vector<SumFileTerm> terms;

  PreparedSum prepared() const;  // normalized PreparedSum over the domain
};

SumFile parse_sumfile(std::istream& in);
SumFile parse_sumfile_string(const std::string& text);
SumFile parse_sumfile_file(const std::string& path);

std::string serialize(const SumFile& f);

}  // namespace powlog
