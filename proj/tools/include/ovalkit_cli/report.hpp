#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ovalkit::cli {

enum class Check {
    Info,     // reported only
    AbsBelow, // |value| ≤ tol
    Below,    // value ≤ tol
    Above,    // value ≥ tol
    Near,     // |value - target| ≤ tol
};

struct ReportRow {
    std::string name;
    std::string identity;  // what the row checks, in words
    double value = 0.0;
    Check check = Check::Info;
    double tolerance = 0.0;
    std::optional<double> target;
    bool passed = true;
};

ReportRow info_row(std::string name, double value, std::string identity = {});
ReportRow abs_below(std::string name, double value, double tol, std::string identity);
ReportRow below(std::string name, double value, double tol, std::string identity);
ReportRow above(std::string name, double value, double tol, std::string identity);
ReportRow near(std::string name, double value, double target, double tol, std::string identity);

struct Report {
    std::string title;
    std::string tolerance_profile;
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;

    std::size_t failures() const;
};

void print_table(std::ostream& out, const Report& report);
void print_json(std::ostream& out, const Report& report);

// 17 significant digits, '.' decimal separator.
std::string format_number(double v);

}  // namespace ovalkit::cli
