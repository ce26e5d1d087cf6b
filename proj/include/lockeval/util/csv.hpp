#ifndef LOCKEVAL_UTIL_CSV_HPP
#define LOCKEVAL_UTIL_CSV_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lockeval::csv {

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);
std::string join(const std::vector<std::string>& fields);

/// Splits one record, honouring double-quoted fields.
std::vector<std::string> split_record(std::string_view line);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name.
  std::optional<std::size_t> column(std::string_view name) const;
  /// Throws ParseError naming the missing column.
  std::size_t require(std::string_view name) const;
};

/// First non-empty line is the header; every row must match its width.
/// Throws ParseError with the 1-based line number.
Table parse(std::string_view text);

}  // namespace lockeval::csv

#endif
