#ifndef MGCP_CSV_HPP
#define MGCP_CSV_HPP

#include <string>
#include <vector>

namespace mgcp {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits, '.' decimal separator, ASCII only.
std::string format_real(double v);

/// RFC-4180-style output (CRLF-free LF line endings, quoting only when
/// needed); the header row is always written.
void emit_csv(const CsvTable& table, const std::string& path);

std::string render_csv(const CsvTable& table);

}  // namespace mgcp

#endif
