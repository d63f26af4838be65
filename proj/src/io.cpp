#include "dnls/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <Eigen/Core>
#include <fftw3.h>

namespace dnls {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ",";
        out += csv_escape(fields[i]);
    }
    out += "\n";
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_field_csv(const std::filesystem::path& path, const ComplexField& f,
                     const std::string& re_name, const std::string& im_name) {
    std::string body = csv_row({"x", re_name, im_name});
    const Rvec x = f.grid.x();
    for (int j = 0; j < f.grid.N; ++j)
        body += csv_row({format_double(x[j]), format_double(f.v[j].real()),
                         format_double(f.v[j].imag())});
    atomic_write(path, body);
}

std::filesystem::path output_root(const std::string& cli_dir) {
    if (!cli_dir.empty()) return cli_dir;
    if (const char* env = std::getenv("DNLSLAB_OUT"); env && *env) return env;
    return ".";
}

nlohmann::json version_info() {
    nlohmann::json j;
    j["dnlslab"] = "1.0.0";
    j["fftw"] = std::string(fftw_version);
    j["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                 std::to_string(EIGEN_MINOR_VERSION);
    j["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_PATCH);
#if defined(__VERSION__)
    j["compiler"] = __VERSION__;
#endif
    return j;
}

}  // namespace dnls
