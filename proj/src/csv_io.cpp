#include "jumpsift/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace jumpsift {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& s, std::size_t line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw IoError("line " + std::to_string(line_no) + ": not a number: '" + s + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_path_csv(std::ostream& out, const SamplePath& path) {
    const bool truth = path.has_ground_truth();
    out << (truth ? "index,time,value,true_jump_increment\n" : "index,time,value\n");
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        out << i << ',' << format_double(path.times[i]) << ',' << format_double(path.values[i]);
        if (truth) out << ',' << format_double(i == 0 ? 0.0 : (*path.true_jump_increments)[i - 1]);
        out << '\n';
    }
}

SamplePath read_path_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("path CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split(line);
    const bool truth = header.size() == 4 && header[3] == "true_jump_increment";
    if (header.size() < 3 || header[0] != "index" || header[1] != "time" || header[2] != "value" ||
        (header.size() == 4 && !truth) || header.size() > 4) {
        throw IoError("path CSV header must be index,time,value[,true_jump_increment]");
    }

    std::vector<double> times, values, jumps;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                          " columns");
        }
        times.push_back(parse_number(cells[1], line_no));
        values.push_back(parse_number(cells[2], line_no));
        if (truth) jumps.push_back(parse_number(cells[3], line_no));
    }
    if (values.size() < 3) throw IoError("path CSV needs at least three observations");

    const std::size_t n = values.size() - 1;
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i <= n; ++i) {
        const double step = times[i] - times[i - 1];
        if (!(std::fabs(step - dt) <= 1e-9 * std::max(1.0, std::fabs(times[i])))) {
            throw IoError("path CSV times are not equidistant");
        }
    }
    const SamplingScheme scheme(n, dt, values.front());
    SamplePath path{std::move(times), std::move(values), std::nullopt, scheme};
    if (truth) path.true_jump_increments = std::vector<double>(jumps.begin() + 1, jumps.end());
    check_path(path);
    return path;
}

SamplePath load_path_csv(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file);
    try {
        return read_path_csv(in);
    } catch (const IoError& e) {
        throw IoError(file + ": " + e.what());
    }
}

void save_path_csv(const std::string& file, const SamplePath& path) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write " + file);
    write_path_csv(out, path);
    if (!out) throw IoError("write failed: " + file);
}

void write_design_csv(std::ostream& out, const RegressionDesign& d) {
    out << "y,z1,z2,x_prev\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        out << format_double(d.y[i]) << ',' << format_double(d.z1[i]) << ',' << format_double(d.z2[i]) << ','
            << format_double(d.x_prev[i]) << '\n';
    }
}

void write_influence_csv(std::ostream& out, const InfluenceProfile& p) {
    out << "index,residual,contribution,likelihood\n";
    for (std::size_t i = 0; i < p.residuals.size(); ++i) {
        out << (i + 1) << ',' << format_double(p.residuals[i]) << ',' << format_double(p.contributions[i]) << ','
            << format_double(p.likelihoods[i]) << '\n';
    }
}

std::string threshold_json(const ThresholdSpec& t) {
    nlohmann::ordered_json j;
    j["n"] = t.n;
    j["mode"] = t.mode.kind_name();
    j["q_or_c"] = t.mode.value;
    j["a_n"] = t.a_n;
    j["b_n"] = t.b_n;
    j["xi"] = t.resolved_xi;
    return j.dump();
}

void write_detection_csv(std::ostream& out, const DetectionReport& rep) {
    out << "# " << threshold_json(rep.threshold) << '\n';
    out << "index,time,z,abs_z,detected,jump_size_estimate\n";
    const double dt = rep.z_stats.scheme.delta_n();
    const auto& z = rep.z_stats.z;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const std::size_t idx = i + 1;
        const auto it = rep.jump_size_estimates.find(idx);
        const bool detected = std::fabs(z[i]) > rep.threshold.resolved_xi;
        out << idx << ',' << format_double(static_cast<double>(idx) * dt) << ',' << format_double(z[i]) << ','
            << format_double(std::fabs(z[i])) << ',' << (detected ? 1 : 0) << ',';
        if (it != rep.jump_size_estimates.end()) out << format_double(it->second);
        out << '\n';
    }
}

}  // namespace jumpsift
