#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "walras/monotonicity_class.hpp"
#include "walras/price_vector.hpp"
#include "walras/regions.hpp"

namespace walras {

/// Aggregate excess demand E(p) = S(p) - D(p). Only the difference is modeled.
class ExcessDemandModel {
public:
    using Map = std::function<PriceVector(const PriceVector&)>;

    ExcessDemandModel(std::size_t dim, Map evaluate, std::string label = {},
                      std::map<MonotonicityClass, bool> declared = {});

    std::size_t dim() const noexcept { return dim_; }
    const std::string& label() const noexcept { return label_; }

    /// Expected checker verdicts (true = holds) recorded for fixtures.
    const std::map<MonotonicityClass, bool>& declared_properties() const noexcept { return declared_; }

    /// Evaluates E(p); throws if the dimension is wrong or the output is not finite.
    PriceVector operator()(const PriceVector& p) const;

private:
    std::size_t dim_;
    Map evaluate_;
    std::string label_;
    std::map<MonotonicityClass, bool> declared_;
};

using Matrix = std::vector<std::vector<double>>;

/// E(p) = M p - c.
ExcessDemandModel linear_economy(Matrix m, std::vector<double> c, std::string label = "linear",
                                 std::map<MonotonicityClass, bool> declared = {});

/// One-commodity model E(t) = f(t), intended for the interval [lo, hi].
ExcessDemandModel scalar_economy(std::function<double(double)> f, double lo, double hi,
                                 std::string label = "scalar",
                                 std::map<MonotonicityClass, bool> declared = {});

/// Named scalar functions usable from problem files.
std::function<double(double)> scalar_function(const std::string& name);
std::vector<std::string> scalar_function_names();

struct MortgageTerms {
    double principal = 0.0;   // P
    int periods = 1;          // N
    double rate = 0.0;        // per-period interest
    double down_payment = 0.0;  // B

    void validate() const;
};

/// Level payment A = P r (1+r)^N / ((1+r)^N - 1), with A = P/N at r = 0.
double mortgage_payment(const MortgageTerms& terms);

/// d A / d rate, continuous through r = 0.
double mortgage_payment_slope(const MortgageTerms& terms);

/// g(p2) = intercept + slope * p2, an upper bound on the rate coordinate.
struct AffineCap {
    double intercept = 0.0;
    double slope = 0.0;
    double operator()(double p2) const { return intercept + slope * p2; }
};

/// Tangent of p2 >= B + N A(p1) at p1 = reference_rate, solved for p1.
/// Principal/periods/down payment come from terms; its rate field is ignored.
AffineCap linearized_cap(const MortgageTerms& terms, double reference_rate);

/// X = {p : 0 <= p1 <= g(p2), p1 <= rate_upper, lower_j <= p_j <= upper_j for j >= 2}.
/// lower/upper cover coordinates 2..n and must be finite.
Polyhedron mortgage_region(const AffineCap& cap, const std::vector<double>& lower,
                           const std::vector<double>& upper, double rate_upper = kUnbounded);

/// True iff every component of E exceeds margin at every sample.
bool is_positive(const ExcessDemandModel& e, const ConvexRegion& x, const std::vector<PriceVector>& samples,
                 double margin = 1e-9);

/// A named economy on its own region, with the oracle's Lipschitz-scale constant.
struct Fixture {
    std::string label;
    ExcessDemandModel model;
    ConvexRegion region;
    double lipschitz = 1.0;
    std::string description;
};

std::vector<Fixture> default_catalog();
/// Throws std::out_of_range for unknown labels.
Fixture find_fixture(const std::string& label);

}  // namespace walras
