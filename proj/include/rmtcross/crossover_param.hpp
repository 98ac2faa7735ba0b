#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmtcross {

/// Symmetry-breaking parameter of the orthogonal-to-unitary crossover,
/// available in both conventions:
///   alpha in [0,1]   (GOE at 0, GUE at 1),
///   lambda in [0,inf] with alpha = lambda/sqrt(1+lambda^2).
///
/// Both views plus 1-alpha^2 are computed once at construction with
/// cancellation-free formulas, so converting back and forth returns the
/// stored values exactly. The lambda view is +inf at alpha=1.
class CrossoverParam {
public:
    static CrossoverParam from_alpha(double alpha) {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::domain_error("CrossoverParam: alpha must be in [0,1]");
        CrossoverParam p;
        p.alpha_ = alpha;
        p.one_minus_alpha_sq_ = (1.0 - alpha) * (1.0 + alpha);
        p.lambda_ = (alpha == 1.0) ? std::numeric_limits<double>::infinity()
                                   : alpha / std::sqrt(p.one_minus_alpha_sq_);
        return p;
    }

    static CrossoverParam from_lambda(double lambda) {
        if (!(lambda >= 0.0))
            throw std::domain_error("CrossoverParam: lambda must be >= 0");
        CrossoverParam p;
        p.lambda_ = lambda;
        if (std::isinf(lambda)) {
            p.alpha_ = 1.0;
            p.one_minus_alpha_sq_ = 0.0;
        } else {
            p.alpha_ = lambda / std::hypot(1.0, lambda);
            p.one_minus_alpha_sq_ = 1.0 / (1.0 + lambda * lambda);
        }
        return p;
    }

    double alpha() const { return alpha_; }
    double lambda() const { return lambda_; }

    /// 1 - alpha^2 = 1/(1+lambda^2), exact at both endpoints.
    double one_minus_alpha_sq() const { return one_minus_alpha_sq_; }

    bool is_goe() const { return alpha_ == 0.0; }
    bool is_gue() const { return alpha_ == 1.0; }

private:
    CrossoverParam() = default;
    double alpha_ = 0.0;
    double lambda_ = 0.0;
    double one_minus_alpha_sq_ = 1.0;
};

}  // namespace rmtcross
