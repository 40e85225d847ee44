#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noneq/chain.hpp"
#include "noneq/cyclespace.hpp"
#include "noneq/linalg.hpp"
#include "noneq/solver1ne.hpp"

namespace noneq {

// Everything the analyze command reports for one chain. Fields that need at
// least three states stay empty below that.
template <class T>
struct Analysis {
    int n = 0;
    std::string name;
    Vec<T> pi;
    Mat<T> currents;
    bool detailed_balance = false;
    std::vector<T> coefficients;
    std::optional<KDetection<T>> detection;
    bool solver_applicable = false;
    bool one_ne_valid = false;
    std::optional<T> one_ne_d;
    std::optional<T> one_ne_residual;
    std::string one_ne_reason;
    std::optional<T> kolmogorov;
    std::optional<T> det_delta;
};

template <class T>
Analysis<T> analyze_chain(const Generator<T>& g, std::optional<T> tol = std::nullopt) {
    // One zero tolerance for the whole report, scaled by the rate magnitude.
    T rate_scale = g.max_rate();
    if (rate_scale < T(1)) rate_scale = T(1);
    std::optional<T> eff(tol.value_or(scaled_tol<T>(kZeroTolBase, rate_scale)));

    Analysis<T> a;
    a.n = g.size();
    Distribution<T> pi = stationary_distribution(g, eff);
    CurrentMatrix<T> currents = current_matrix(g, pi);
    a.pi = pi.vector();
    a.currents = currents.matrix();
    a.detailed_balance = is_detailed_balance(g, pi, eff);

    if (a.n >= 3) {
        a.coefficients = decompose(currents, eff).coefficients();
        a.detection = detect_k_nonequilibrium(currents, eff);
        a.kolmogorov = kolmogorov_gap(g);
        a.det_delta = delta_determinant_closed(g);
        a.solver_applicable = true;
        try {
            OneNEResult<T> r = solve_one_ne(g, tol);
            a.one_ne_valid = r.valid;
            a.one_ne_d = r.d;
            a.one_ne_residual = r.residual;
        } catch (const ReversibleRing&) {
            a.one_ne_reason = "reversible-ring";
        } catch (const ZeroDenominator&) {
            a.one_ne_reason = "zero-denominator";
        } catch (const NonPositive&) {
            a.one_ne_reason = "nonpositive-candidate";
        }
    }
    return a;
}

// Machine report; schema-stable keys, numbers as JSON doubles in float mode
// and as exact "p/q" strings in rational mode.
std::string render_analysis_json(const Analysis<double>& a);
std::string render_analysis_json(const Analysis<Rational>& a);

std::string render_analysis_text(const Analysis<double>& a);
std::string render_analysis_text(const Analysis<Rational>& a);

}  // namespace noneq
