#include "nilscroll/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nilscroll/errors.hpp"

namespace nilscroll {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) {
        while (!cur.empty() && (cur.back() == '\r' || cur.back() == ' ')) cur.pop_back();
        size_t start = 0;
        while (start < cur.size() && cur[start] == ' ') ++start;
        out.push_back(cur.substr(start));
    }
    return out;
}

}  // namespace

std::map<std::string, std::vector<double>> load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open CSV file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw BadInput("empty CSV file: " + path);
    const std::vector<std::string> header = split(line, ',');

    std::map<std::string, std::vector<double>> cols;
    std::vector<std::vector<double>*> order;
    for (const std::string& h : header) order.push_back(&cols[h]);

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != header.size())
            throw BadInput("ragged CSV row in " + path + ": " + line);
        for (size_t i = 0; i < cells.size(); ++i) order[i]->push_back(std::stod(cells[i]));
    }
    return cols;
}

SampledColumns load_sampled_curve(const std::string& path, const std::string& c1,
                                  const std::string& c2, const std::string& c3) {
    const auto cols = load_csv(path);
    const auto need = [&](const std::string& name) -> const std::vector<double>& {
        const auto it = cols.find(name);
        if (it == cols.end()) throw BadInput(path + ": missing column '" + name + "'");
        return it->second;
    };
    const auto& s = need("s");
    const auto& a = need(c1);
    const auto& b = need(c2);
    const auto& c = need(c3);
    if (s.size() < 2) throw BadInput(path + ": need at least two samples");
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (!(s[i + 1] > s[i])) throw BadInput(path + ": s must increase strictly");

    SampledColumns out;
    out.s = s;
    out.v.resize(s.size());
    for (size_t i = 0; i < s.size(); ++i) out.v[i] = {a[i], b[i], c[i]};
    return out;
}

ScalarFn load_sampled_scalar(const std::string& path, const std::string& column, Span* span) {
    const auto cols = load_csv(path);
    const auto s_it = cols.find("s");
    const auto v_it = cols.find(column);
    if (s_it == cols.end() || v_it == cols.end())
        throw BadInput(path + ": expected columns 's' and '" + column + "'");
    if (s_it->second.size() < 2) throw BadInput(path + ": need at least two samples");
    if (span) *span = {s_it->second.front(), s_it->second.back()};
    return splined_scalar(s_it->second, v_it->second);
}

Mat3 load_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open matrix JSON: " + path);
    nlohmann::json j;
    in >> j;
    if (!j.is_array() || j.size() != 9)
        throw BadInput(path + ": expected a 9-number row-major array");
    Mat3 M;
    for (int i = 0; i < 9; ++i) M.m[i] = j[i].get<double>();
    return M;
}

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void write_mesh_csv(const std::string& path, const MapFn& f, const GridSpec& grid) {
    std::ostringstream out;
    out << "s,t,x1,x2,x3\n";
    for (int i = 0; i < grid.ns; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            const double s = grid.s(i), t = grid.t(j);
            const Nil3Point p = f(s, t);
            out << fmt9(s) << ',' << fmt9(t) << ',' << fmt9(p.x1) << ',' << fmt9(p.x2) << ','
                << fmt9(p.x3) << '\n';
        }
    write_text(path, out.str());
}

void write_mesh_obj(const std::string& path, const MapFn& f, const GridSpec& grid) {
    std::ostringstream out;
    out << "# nilscroll mesh: group coordinates (x1,x2,x3) written as Euclidean R^3 positions\n";
    for (int i = 0; i < grid.ns; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            const Nil3Point p = f(grid.s(i), grid.t(j));
            out << "v " << fmt9(p.x1) << ' ' << fmt9(p.x2) << ' ' << fmt9(p.x3) << '\n';
        }
    auto idx = [&grid](int i, int j) { return i * grid.nt + j + 1; };
    for (int i = 0; i + 1 < grid.ns; ++i)
        for (int j = 0; j + 1 < grid.nt; ++j)
            out << "f " << idx(i, j) << ' ' << idx(i + 1, j) << ' ' << idx(i + 1, j + 1) << ' '
                << idx(i, j + 1) << '\n';
    write_text(path, out.str());
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadInput("cannot open for writing: " + path);
    out << content;
}

std::string junit_xml(const std::vector<VerificationReport>& reports) {
    int failures = 0, tests = 0;
    for (const auto& r : reports)
        for (const auto& [k, v] : r.pass) {
            ++tests;
            if (!v) ++failures;
        }
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<testsuite name=\"nilscroll\" tests=\"" << tests << "\" failures=\"" << failures
        << "\">\n";
    for (const auto& r : reports)
        for (const auto& [k, v] : r.pass) {
            out << "  <testcase classname=\"" << r.name << "\" name=\"" << k << "\"";
            if (v) {
                out << "/>\n";
            } else {
                const auto it = r.residuals.find(k);
                out << ">\n    <failure message=\"residual "
                    << (it != r.residuals.end() ? it->second.max : 0.0) << "\"/>\n  </testcase>\n";
            }
        }
    out << "</testsuite>\n";
    return out.str();
}

}  // namespace nilscroll
