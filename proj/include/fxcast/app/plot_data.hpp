#pragma once

#include <fxcast/app/render.hpp>
#include <fxcast/app/report.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fxcast::app {

/// Output directory missing, not a directory, or not writable.
class OutputError : public Error {
public:
    explicit OutputError(const std::string& what) : Error(ErrorKind::data, what) {}
};

inline void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write " + path.string());
    out << body;
    out.flush();
    if (!out) throw OutputError("write failed for " + path.string());
}

inline void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw OutputError("cannot create output directory " + dir.string());
}

/// Writes returns.csv (date,value) and correlogram.csv (lag,acf,pacf,band); returns the paths.
inline std::vector<std::filesystem::path> emit_plot_data(const PipelineReport& report, const std::filesystem::path& dir) {
    if (!report.figure1 || !report.figure2) throw InvalidArgument("report lacks the returns or correlogram block");
    ensure_directory(dir);
    std::string returns = "date,value\n";
    const auto& f1 = *report.figure1;
    for (std::size_t i = 0; i < f1.values.size(); ++i)
        returns += (i < f1.dates.size() ? f1.dates[i] : std::to_string(i + 1)) + "," + detail::exact(f1.values[i]) + "\n";
    std::string acf = "lag,acf,pacf,band\n";
    for (const auto& r : report.figure2->rows)
        acf += std::to_string(r.lag) + "," + detail::exact(r.acf) + "," + detail::exact(r.pacf) + "," +
               detail::exact(r.band) + "\n";
    const std::vector<std::filesystem::path> paths{dir / "returns.csv", dir / "correlogram.csv"};
    write_text_file(paths[0], returns);
    write_text_file(paths[1], acf);
    return paths;
}

}  // namespace fxcast::app
