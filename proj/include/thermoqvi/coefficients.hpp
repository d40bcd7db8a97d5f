#pragma once

#include <functional>
#include <vector>

namespace thermoqvi {

/// Membrane stiffness coefficient a(s): either a constant or a piecewise
/// linear table over a stated range, clamped outside it. lambda1/lambda2
/// are the certified lower/upper bounds, lip bounds |a'|.
class CoefficientFunction {
  public:
    CoefficientFunction() = default;  // the unit constant

    static CoefficientFunction constant(double value);
    static CoefficientFunction table(std::vector<double> abscissae,
                                     std::vector<double> values);
    /// Samples fn at k+1 equispaced points of [lo, hi] into a table.
    static CoefficientFunction tabulate(const std::function<double(double)>& fn,
                                        double lo, double hi, int k);

    double operator()(double s) const;
    bool is_constant() const { return constant_; }
    double lambda1() const { return lambda1_; }
    double lambda2() const { return lambda2_; }
    double lip() const { return lip_; }

  private:
    bool constant_ = true;
    double value_ = 1.0;
    std::vector<double> s_, v_;
    double lambda1_ = 1.0, lambda2_ = 1.0, lip_ = 0.0;
};

/// Model constants of the coupled system. Positivity requirements:
/// kappa_i > 0, c_i > 0, b_i >= 0, alpha > 0.
struct Coefficients {
    double kappa1 = 1.0, kappa2 = 1.0;
    double c1 = 1.0, c2 = 1.0;
    double b1 = 0.0, b2 = 0.0;
    double alpha = 1.0;
    CoefficientFunction a = CoefficientFunction::constant(1.0);

    /// Throws std::invalid_argument on a sign violation.
    void validate() const;
};

}  // namespace thermoqvi
