#include "uhs/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace uhs {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

// JSON has no inf/nan; such values go out as strings.
Json number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

Json vector_json(const RealVector& v) {
    Json out = Json::array();
    for (double x : v) out.push_back(number(x));
    return out;
}

}  // namespace

Json to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(const EnvelopeEntry& e) {
    return Json{{"check", e.check},
                {"k", e.k},
                {"ell", e.ell},
                {"alpha", e.alpha},
                {"constant", number(e.constant)},
                {"left_slope", number(e.left_slope)},
                {"right_slope", number(e.right_slope)},
                {"pass", e.pass}};
}

Json to_json(const RegularityReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries) entries.push_back(to_json(e));
    return Json{{"check", "regularity"}, {"subject", r.subject}, {"entries", entries}, {"notes", r.notes}, {"pass", r.pass}};
}

Json to_json(const CompatibilityReport& r) {
    return Json{{"check", "compatibility"},
                {"parameters", {{"tolerance", number(r.tolerance)}, {"pairs_checked", r.pairs_checked}}},
                {"max_deviation", number(r.max_deviation)},
                {"max_magnitude", number(r.max_magnitude)},
                {"worst_point",
                 {{"theta", vector_json(r.worst_pair.theta)}, {"omega", vector_json(r.worst_pair.omega)}, {"r", number(r.worst_r)}}},
                {"pass", r.pass}};
}

Json to_json(const ExtractionResult& r) {
    Json values = Json::array();
    for (const auto& v : r.slice.scaled_values) values.push_back(to_json(v));
    return Json{{"theta", vector_json(r.slice.theta)},
                {"omega", vector_json(r.slice.omega)},
                {"p", number(r.slice.p)},
                {"s_values", vector_json(r.slice.s_values)},
                {"scaled_values", values},
                {"errors", vector_json(r.errors)},
                {"f_est", to_json(r.f_est)},
                {"rate", number(r.rate)},
                {"degenerate", r.degenerate}};
}

Json to_json(const ResidualStudy& r) {
    Json ladder = Json::array();
    for (const auto& pt : r.ladder)
        ladder.push_back(Json{{"h", number(pt.h)}, {"residual", to_json(pt.residual)}, {"abs", number(std::abs(pt.residual))}});
    return Json{{"x", vector_json(r.x)}, {"y", vector_json(r.y)}, {"u", to_json(r.u)},
                {"ladder", ladder}, {"order", number(r.order)}, {"steps_used", r.steps_used}};
}

Json to_json(const PhaseComparison& r) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.s_values.size(); ++i)
        rows.push_back(Json{{"s", number(r.s_values[i])},
                            {"direct", to_json(r.direct[i])},
                            {"leading", to_json(r.leading[i])},
                            {"abs_remainder", number(std::abs(r.remainder[i]))}});
    return Json{{"rows", rows},
                {"cross_fitted", Json::array({to_json(r.cross_fitted[0]), to_json(r.cross_fitted[1])})},
                {"residual_slope", number(r.residual_slope)},
                {"vacuous", r.vacuous}};
}

Json to_json(const EnvelopeFit& r) {
    return Json{{"check", r.check},
                {"grid", vector_json(r.grid)},
                {"values", vector_json(r.values)},
                {"fitted_constant", number(r.fitted_constant)},
                {"fitted_slope", number(r.fitted_slope)},
                {"claimed_slope", number(r.claimed_slope)},
                {"log_log_slope", number(r.log_log_slope)},
                {"notes", r.notes},
                {"pass", r.pass}};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
    rows_.emplace_back();
    return *this;
}

CsvTable& CsvTable::add(double v) {
    rows_.back().push_back(format_number(v));
    return *this;
}

CsvTable& CsvTable::add(Complex z) {
    add(z.real());
    return add(z.imag());
}

CsvTable& CsvTable::add(const std::string& text) {
    rows_.back().push_back(text);
    return *this;
}

CsvTable& CsvTable::add(int v) {
    rows_.back().push_back(std::to_string(v));
    return *this;
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

void CsvTable::write(const std::string& path) const { write_text(path, str()); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigurationError("cannot write '" + path + "'");
    out << text;
}

}  // namespace uhs
