#pragma once

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

namespace wavectl {

/// Formats a double with round-trip precision and '.' as decimal separator.
std::string format_number(double value);

/// Minimal CSV emitter: header row, comma separated, LF line endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((write_field(fields, first), first = false), ...);
    out_ << '\n';
  }

 private:
  template <typename T>
  void write_field(const T& value, bool first) {
    if (!first) out_ << ',';
    if constexpr (std::is_floating_point_v<T>) {
      out_ << format_number(static_cast<double>(value));
    } else {
      out_ << value;
    }
  }

  std::ostream& out_;
};

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace wavectl
