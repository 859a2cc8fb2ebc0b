#include "evd/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace evd {

std::string format_double(double v, int precision) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

nlohmann::json json_real(double v) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
}

nlohmann::json to_json(const Interval& iv) {
    return {{"lo", json_real(iv.lo)}, {"hi", json_real(iv.hi)}};
}

nlohmann::json to_json(const RangeReport& rep) {
    nlohmann::json vars = nlohmann::json::object();
    for (Var v : kAllVars)
        if (rep.has(v)) vars[std::string(var_name(v))] = to_json(rep.of(v));
    return {{"method", std::string(method_name(rep.method))}, {"ranges", vars}};
}

nlohmann::json to_json(const EvdResult& res) {
    nlohmann::json eig = nlohmann::json::array();
    for (double v : res.eigenvalues) eig.push_back(json_real(v));
    nlohmann::json vecs = nlohmann::json::array();
    for (std::size_t i = 0; i < res.eigenvectors.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < res.eigenvectors.cols(); ++j)
            row.push_back(json_real(res.eigenvectors(i, j)));
        vecs.push_back(row);
    }
    nlohmann::json events = nlohmann::json::array();
    for (const auto& ev : res.overflow_events) events.push_back(to_json(ev));
    return {{"eigenvalues", eig},
            {"eigenvectors", vecs},
            {"sweeps_run", res.sweeps_run},
            {"offdiag_residual", json_real(res.offdiag_residual)},
            {"overflow_events", events}};
}

nlohmann::json to_json(const OverflowEvent& ev) {
    return {{"operation", ev.operation},
            {"operand_a", json_real(ev.operand_a)},
            {"operand_b", json_real(ev.operand_b)},
            {"ideal_value", json_real(ev.ideal_value)},
            {"stored_value", json_real(ev.stored_value)},
            {"variable", std::string(var_name(ev.variable))},
            {"sweep", ev.sweep},
            {"i", ev.i},
            {"j", ev.j}};
}

namespace {

std::string cell(const RangeReport& rep, Var v) {
    if (!rep.has(v)) return "-";
    const Interval& iv = rep.of(v);
    return "[" + format_double(iv.lo) + ", " + format_double(iv.hi) + "]";
}

}  // namespace

std::string ranges_table(const std::vector<RangeReport>& reports) {
    std::vector<std::size_t> widths(reports.size() + 1, 3);
    for (Var v : kAllVars)
        widths[0] = std::max(widths[0], var_name(v).size());
    for (std::size_t c = 0; c < reports.size(); ++c) {
        widths[c + 1] = method_name(reports[c].method).size();
        for (Var v : kAllVars)
            widths[c + 1] = std::max(widths[c + 1], cell(reports[c], v).size());
    }

    std::ostringstream out;
    auto pad = [&out](const std::string& s, std::size_t w) {
        out << s << std::string(w - s.size() + 2, ' ');
    };
    pad("var", widths[0]);
    for (std::size_t c = 0; c < reports.size(); ++c)
        pad(std::string(method_name(reports[c].method)), widths[c + 1]);
    out << '\n';
    for (Var v : kAllVars) {
        pad(std::string(var_name(v)), widths[0]);
        for (std::size_t c = 0; c < reports.size(); ++c)
            pad(cell(reports[c], v), widths[c + 1]);
        out << '\n';
    }
    return out.str();
}

std::string ranges_csv(const std::vector<RangeReport>& reports) {
    std::ostringstream out;
    out << "method,variable,lo,hi\n";
    for (const RangeReport& rep : reports)
        for (Var v : kAllVars) {
            if (!rep.has(v)) continue;
            out << method_name(rep.method) << ',' << var_name(v) << ','
                << format_double(rep.of(v).lo, 17) << ','
                << format_double(rep.of(v).hi, 17) << '\n';
        }
    return out.str();
}

std::string overflow_csv(const std::vector<OverflowEvent>& events) {
    std::ostringstream out;
    out << "sweep,i,j,variable,operation,ideal_value,stored_value\n";
    for (const auto& ev : events)
        out << ev.sweep << ',' << ev.i << ',' << ev.j << ',' << var_name(ev.variable)
            << ',' << ev.operation << ',' << format_double(ev.ideal_value, 17) << ','
            << format_double(ev.stored_value, 17) << '\n';
    return out.str();
}

}  // namespace evd
