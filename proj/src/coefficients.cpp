#include "thermoqvi/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermoqvi {

CoefficientFunction CoefficientFunction::constant(double value) {
    if (!(value > 0.0))
        throw std::invalid_argument("CoefficientFunction: need a > 0");
    CoefficientFunction f;
    f.constant_ = true;
    f.value_ = value;
    f.lambda1_ = f.lambda2_ = value;
    f.lip_ = 0.0;
    return f;
}

CoefficientFunction CoefficientFunction::table(std::vector<double> abscissae,
                                               std::vector<double> values) {
    if (abscissae.size() != values.size() || abscissae.size() < 2)
        throw std::invalid_argument("CoefficientFunction: bad table");
    for (size_t k = 1; k < abscissae.size(); ++k)
        if (!(abscissae[k] > abscissae[k - 1]))
            throw std::invalid_argument("CoefficientFunction: abscissae not increasing");
    CoefficientFunction f;
    f.constant_ = false;
    f.s_ = std::move(abscissae);
    f.v_ = std::move(values);
    f.lambda1_ = *std::min_element(f.v_.begin(), f.v_.end());
    f.lambda2_ = *std::max_element(f.v_.begin(), f.v_.end());
    if (!(f.lambda1_ > 0.0))
        throw std::invalid_argument("CoefficientFunction: need a > 0");
    f.lip_ = 0.0;
    for (size_t k = 1; k < f.s_.size(); ++k)
        f.lip_ = std::max(f.lip_, std::abs(f.v_[k] - f.v_[k - 1]) / (f.s_[k] - f.s_[k - 1]));
    return f;
}

CoefficientFunction CoefficientFunction::tabulate(const std::function<double(double)>& fn,
                                                  double lo, double hi, int k) {
    if (!(hi > lo) || k < 1)
        throw std::invalid_argument("CoefficientFunction::tabulate: bad range");
    std::vector<double> s(k + 1), v(k + 1);
    for (int i = 0; i <= k; ++i) {
        s[i] = lo + (hi - lo) * i / k;
        v[i] = fn(s[i]);
    }
    return table(std::move(s), std::move(v));
}

double CoefficientFunction::operator()(double s) const {
    if (constant_) return value_;
    if (s <= s_.front()) return v_.front();
    if (s >= s_.back()) return v_.back();
    auto it = std::upper_bound(s_.begin(), s_.end(), s);
    size_t k = static_cast<size_t>(it - s_.begin());
    double t = (s - s_[k - 1]) / (s_[k] - s_[k - 1]);
    return v_[k - 1] + t * (v_[k] - v_[k - 1]);
}

void Coefficients::validate() const {
    if (!(kappa1 > 0.0) || !(kappa2 > 0.0))
        throw std::invalid_argument("Coefficients: need kappa_i > 0");
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw std::invalid_argument("Coefficients: need c_i > 0");
    if (b1 < 0.0 || b2 < 0.0)
        throw std::invalid_argument("Coefficients: need b_i >= 0");
    if (!(alpha > 0.0))
        throw std::invalid_argument("Coefficients: need alpha > 0");
}

}  // namespace thermoqvi
