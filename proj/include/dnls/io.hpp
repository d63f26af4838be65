#pragma once

#include <filesystem>

#include "dnls/grid.hpp"

#include "json.hpp"

namespace dnls {

// RFC 4180: fields containing comma, quote or newline are quoted, quotes
// doubled. Numbers are written with %.17g.
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);
std::string format_double(double v);

// Write via a temp file + rename so readers never see a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

void write_field_csv(const std::filesystem::path& path, const ComplexField& f,
                     const std::string& re_name = "Re",
                     const std::string& im_name = "Im");

// Output root: explicit dir if nonempty, else $DNLSLAB_OUT, else ".".
std::filesystem::path output_root(const std::string& cli_dir);

nlohmann::json version_info();

}  // namespace dnls
