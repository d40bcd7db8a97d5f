#pragma once

#include <memory>
#include <string>

#include "thermoqvi/checks.hpp"

namespace thermoqvi {

/// Arithmetic expression over x, y, t with + - * / min max abs,
/// parentheses and numeric literals.
class Expression {
  public:
    static Expression parse(const std::string& text);  // throws ConfigError
    double eval(double x, double y, double t) const;
    const std::string& text() const { return text_; }

    Expression() = default;

    struct Node;

  private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scalar source specification: expression over (x, y, t) or a CSV field
/// file (value prefixed with `csv:`).
struct SourceSpec {
    bool from_csv = false;
    std::string csv_path;
    Expression expr;
    bool present = false;

    ScalarField make(const Grid& grid, double t) const;
    FieldGenerator generator(const Grid& grid) const;
};

/// Parsed and validated scenario: flat `section.key = value` text with
/// `#` comments. Unknown keys are rejected.
struct ScenarioConfig {
    int dim = 1;
    int n = 64;
    Coefficients coeffs;
    SourceSpec f, g, h1, h2;
    SourceSpec theta1_init, theta2_init;
    bool has_time = false;
    TimeGrid tgrid;
    int mq = 8;
    RegSchedule schedule;
    SolverParams solver;
    ContactParams contact;
    CheckParams checks;
    unsigned seed = 0;
    std::string out_dir;
    std::string raw_text;
    std::string hash;

    Grid make_grid() const { return build_grid(dim, n); }
    Sources make_sources(const Grid& grid, double t = 0.0) const;
    TimeSources make_time_sources(const Grid& grid) const;  // needs initials
};

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

}  // namespace thermoqvi
