#include <algorithm>
#include <fstream>
#include <sstream>

#include "gpslab/harness.hpp"
#include "gpslab/svg.hpp"

namespace gpslab {

namespace {

struct ParsedCsv {
    std::string name;  // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::vector<double> column(const std::string& col) const {
        const auto it = std::find(columns.begin(), columns.end(), col);
        if (it == columns.end()) {
            throw io_error("csv is missing column '" + col + "'");
        }
        const size_t idx = static_cast<size_t>(it - columns.begin());
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r[idx]);
        return out;
    }
};

ParsedCsv parse_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open csv: " + path.string());
    }
    ParsedCsv csv;
    csv.name = path.stem().string();
    std::string line;
    if (!std::getline(in, line)) {
        throw io_error("empty csv: " + path.string());
    }
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) csv.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw io_error("bad numeric cell in " + path.string());
            }
        }
        if (vals.size() != csv.columns.size()) {
            throw io_error("ragged csv row in " + path.string());
        }
        csv.rows.push_back(std::move(vals));
    }
    if (csv.rows.empty()) {
        throw io_error("csv has no data rows: " + path.string());
    }
    return csv;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open for writing: " + path.string());
    }
    out << content;
}

}  // namespace

std::vector<std::filesystem::path> cmd_plot(const std::filesystem::path& csv_dir) {
    if (!std::filesystem::is_directory(csv_dir)) {
        throw io_error("not a directory: " + csv_dir.string());
    }
    std::vector<std::filesystem::path> inputs;
    for (const auto& entry : std::filesystem::directory_iterator(csv_dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
        const auto stem = entry.path().filename().string();
        if (stem == "summary.csv" || stem == "ablation.csv") continue;
        inputs.push_back(entry.path());
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) {
        throw io_error("no trajectory csv files in " + csv_dir.string());
    }

    // parse everything before writing anything
    std::vector<ParsedCsv> parsed;
    for (const auto& p : inputs) parsed.push_back(parse_csv(p));

    std::vector<std::filesystem::path> written;
    SvgChart comparison;
    comparison.title = "cumulative_tau2, all runs";
    comparison.y_label = "cumulative_tau2";
    for (const auto& csv : parsed) {
        SvgChart cum{csv.name + ": cumulative_tau2 vs step", "cumulative_tau2",
                     {SvgSeries{"cumulative_tau2", csv.column("cumulative_tau2")}}};
        SvgChart off{csv.name + ": manifold offset vs step", "offset",
                     {SvgSeries{"offset", csv.column("offset")}}};
        const auto out_path = csv_dir / (csv.name + ".svg");
        write_file(out_path, render_svg({cum, off}));
        written.push_back(out_path);
        comparison.series.push_back(SvgSeries{csv.name, csv.column("cumulative_tau2")});
    }
    const auto cmp_path = csv_dir / "comparison.svg";
    write_file(cmp_path, render_svg({comparison}));
    written.push_back(cmp_path);
    return written;
}

}  // namespace gpslab
