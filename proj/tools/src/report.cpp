#include "ovalkit_cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <json.hpp>

namespace ovalkit::cli {

namespace {

ReportRow judged(std::string name, double value, Check check, double tol, std::string identity,
                 bool passed) {
    ReportRow r;
    r.name = std::move(name);
    r.identity = std::move(identity);
    r.value = value;
    r.check = check;
    r.tolerance = tol;
    r.passed = passed && std::isfinite(value);
    return r;
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string relation(const ReportRow& r) {
    switch (r.check) {
        case Check::Info: return "-";
        case Check::AbsBelow: return "|v| <= " + short_number(r.tolerance);
        case Check::Below: return "v <= " + short_number(r.tolerance);
        case Check::Above: return "v >= " + short_number(r.tolerance);
        case Check::Near:
            return "|v - " + short_number(*r.target) + "| <= " + short_number(r.tolerance);
    }
    return "-";
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ReportRow info_row(std::string name, double value, std::string identity) {
    ReportRow r;
    r.name = std::move(name);
    r.identity = std::move(identity);
    r.value = value;
    return r;
}

ReportRow abs_below(std::string name, double value, double tol, std::string identity) {
    return judged(std::move(name), value, Check::AbsBelow, tol, std::move(identity),
                  std::abs(value) <= tol);
}

ReportRow below(std::string name, double value, double tol, std::string identity) {
    return judged(std::move(name), value, Check::Below, tol, std::move(identity), value <= tol);
}

ReportRow above(std::string name, double value, double tol, std::string identity) {
    return judged(std::move(name), value, Check::Above, tol, std::move(identity), value >= tol);
}

ReportRow near(std::string name, double value, double target, double tol, std::string identity) {
    ReportRow r = judged(std::move(name), value, Check::Near, tol, std::move(identity),
                         std::abs(value - target) <= tol);
    r.target = target;
    return r;
}

std::size_t Report::failures() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.passed; }));
}

void print_table(std::ostream& out, const Report& report) {
    std::size_t wn = 4, wv = 5, wr = 5;
    for (const auto& r : report.rows) {
        wn = std::max(wn, r.name.size());
        wv = std::max(wv, short_number(r.value).size());
        wr = std::max(wr, relation(r).size());
    }
    if (!report.title.empty()) out << report.title << " (tolerances: " << report.tolerance_profile << ")\n";
    out << std::left << std::setw(static_cast<int>(wn)) << "name" << "  " << std::setw(static_cast<int>(wv))
        << "value" << "  " << std::setw(static_cast<int>(wr)) << "check" << "  status  identity\n";
    for (const auto& r : report.rows) {
        const char* status = r.check == Check::Info ? "-   " : (r.passed ? "PASS" : "FAIL");
        out << std::left << std::setw(static_cast<int>(wn)) << r.name << "  "
            << std::setw(static_cast<int>(wv)) << short_number(r.value) << "  "
            << std::setw(static_cast<int>(wr)) << relation(r) << "  " << status << "    "
            << r.identity << "\n";
    }
    for (const auto& n : report.notes) out << "note: " << n << "\n";
    if (report.failures() > 0) out << report.failures() << " failing row(s)\n";
}

void print_json(std::ostream& out, const Report& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json j = {{"name", r.name}, {"identity", r.identity}, {"value", r.value}};
        if (r.check != Check::Info) {
            j["check"] = relation(r);
            j["tolerance"] = r.tolerance;
            j["passed"] = r.passed;
        }
        if (r.target) j["target"] = *r.target;
        rows.push_back(j);
    }
    nlohmann::json doc = {{"title", report.title},
                          {"tolerance_profile", report.tolerance_profile},
                          {"rows", rows},
                          {"notes", report.notes},
                          {"failures", report.failures()}};
    out << doc.dump(2) << "\n";
}

}  // namespace ovalkit::cli
