/*
 * Copyright 2026 The cogame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cogame/affine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <vector>

namespace cogame {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("integer overflow in affine arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("integer overflow in affine arithmetic");
    return r;
}

bool is_counter(std::string_view var) { return var == kCounter; }

// Variables of e with nonzero coefficient, counter first.
std::vector<std::pair<std::string, std::int64_t>> variables(const AffineUtility& e)
{
    std::vector<std::pair<std::string, std::int64_t>> out;
    if (e.coeff_n != 0) out.emplace_back(std::string(kCounter), e.coeff_n);
    for (const auto& [name, c] : e.coeffs) out.emplace_back(name, c);
    return out;
}

Valuation corner(const AffineUtility& e, const ConstraintBox& box)
{
    Valuation v;
    v[std::string(kCounter)] = box.n_min;
    for (const auto& [name, lb] : box.param_bounds) v[name] = lb;
    for (const auto& [name, c] : e.coeffs) v[name] = box.lower_bound(name);
    return v;
}

// forall x in box: d >= 0
SymbolicTruth nonnegative_forall(const AffineUtility& d, const ConstraintBox& box)
{
    Valuation point = corner(d, box);
    const std::int64_t at_corner = affine_eval(d, point);
    if (at_corner < 0) return {SymbolicTruth::Verdict::Fails, point};
    for (const auto& [var, c] : variables(d)) {
        if (c >= 0) continue;
        // smallest increase of var that drives d below zero
        point[var] = checked_add(box.lower_bound(var), checked_add(at_corner / -c, 1));
        return {SymbolicTruth::Verdict::Fails, point};
    }
    return {SymbolicTruth::Verdict::Holds, std::nullopt};
}

struct Gcd {
    std::int64_t g, x, y; // a*x + b*y = g, g >= 0
};

Gcd extended_gcd(std::int64_t a, std::int64_t b)
{
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - checked_mul(q, s);
        old_s = s;
        s = tmp;
        tmp = old_t - checked_mul(q, t);
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

// Nonnegative y with sum coins[i]*y[i] == target, all coins > 0, target >= 0.
// Shortest paths over residues modulo the smallest coin.
std::optional<std::vector<std::int64_t>> coin_solution(const std::vector<std::int64_t>& coins,
                                                       std::int64_t target)
{
    constexpr std::int64_t kMaxModulus = std::int64_t{1} << 20;
    const auto min_it = std::min_element(coins.begin(), coins.end());
    const std::int64_t m = *min_it;
    const auto min_idx = static_cast<std::size_t>(min_it - coins.begin());
    if (m > kMaxModulus) return std::nullopt;

    const auto mod = static_cast<std::size_t>(m);
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> dist(mod, kInf);
    std::vector<std::size_t> pred(mod, 0), coin_used(mod, 0);
    using Item = std::pair<std::int64_t, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[0] = 0;
    pq.emplace(0, 0);
    while (!pq.empty()) {
        auto [d, r] = pq.top();
        pq.pop();
        if (d != dist[r]) continue;
        for (std::size_t i = 0; i < coins.size(); ++i) {
            const std::int64_t nd = checked_add(d, coins[i]);
            const auto nr = static_cast<std::size_t>(nd % m);
            if (nd < dist[nr]) {
                dist[nr] = nd;
                pred[nr] = r;
                coin_used[nr] = i;
                pq.emplace(nd, nr);
            }
        }
    }
    const auto residue = static_cast<std::size_t>(target % m);
    if (dist[residue] == kInf || dist[residue] > target) return std::vector<std::int64_t>{};

    std::vector<std::int64_t> y(coins.size(), 0);
    for (std::size_t r = residue; r != 0; r = pred[r]) ++y[coin_used[r]];
    y[min_idx] += (target - dist[residue]) / m;
    return y;
}

// exists x in box: d == 0
SymbolicTruth zero_exists(const AffineUtility& d, const ConstraintBox& box)
{
    using V = SymbolicTruth::Verdict;
    Valuation point = corner(d, box);
    const std::int64_t at_corner = affine_eval(d, point);
    if (at_corner == 0) return {V::Holds, point};

    // Solve sum c_i * y_i == -at_corner with y_i >= 0 (y_i = x_i - lb_i).
    auto vars = variables(d);
    std::int64_t target = -at_corner;
    if (vars.empty()) return {V::Fails, std::nullopt};
    const bool any_pos = std::any_of(vars.begin(), vars.end(), [](auto& p) { return p.second > 0; });
    const bool any_neg = std::any_of(vars.begin(), vars.end(), [](auto& p) { return p.second < 0; });

    std::vector<std::int64_t> y(vars.size(), 0);
    if (any_pos && any_neg) {
        // integer solution by iterated extended gcd
        std::int64_t g = vars[0].second;
        std::vector<std::int64_t> x(vars.size(), 0);
        x[0] = 1;
        for (std::size_t k = 1; k < vars.size(); ++k) {
            const Gcd e = extended_gcd(g, vars[k].second);
            for (std::size_t i = 0; i < k; ++i) x[i] = checked_mul(x[i], e.x);
            x[k] = e.y;
            g = e.g;
        }
        if (g < 0) {
            g = -g;
            for (auto& xi : x) xi = -xi;
        }
        if (target % g != 0) return {V::Fails, std::nullopt};
        for (std::size_t i = 0; i < vars.size(); ++i) y[i] = checked_mul(x[i], target / g);

        // move into the nonnegative orthant along kernel vectors
        std::size_t p0 = 0, q0 = 0;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (vars[i].second > 0) p0 = i;
            if (vars[i].second < 0) q0 = i;
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (y[i] >= 0) continue;
            const std::int64_t c = vars[i].second;
            const std::size_t partner = c > 0 ? q0 : p0;
            const std::int64_t step_self = c > 0 ? -vars[q0].second : vars[p0].second;
            const std::int64_t step_partner = c > 0 ? c : -c;
            const std::int64_t t = (-y[i] + step_self - 1) / step_self;
            y[i] = checked_add(y[i], checked_mul(t, step_self));
            y[partner] = checked_add(y[partner], checked_mul(t, step_partner));
        }
    } else {
        const std::int64_t sign = any_pos ? 1 : -1;
        target *= sign;
        if (target < 0) return {V::Fails, std::nullopt};
        std::vector<std::int64_t> coins;
        for (const auto& v : vars) coins.push_back(v.second * sign);
        auto sol = coin_solution(coins, target);
        if (!sol) return {V::Unknown, std::nullopt};
        if (sol->empty()) return {V::Fails, std::nullopt};
        y = *sol;
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
        point[vars[i].first] = checked_add(box.lower_bound(vars[i].first), y[i]);
    return {V::Holds, point};
}

} // namespace

AffineUtility AffineUtility::counter(std::int64_t coefficient)
{
    AffineUtility e;
    e.coeff_n = coefficient;
    return e;
}

AffineUtility AffineUtility::parameter(const std::string& name, std::int64_t coefficient)
{
    AffineUtility e;
    e.set_coefficient(name, coefficient);
    return e;
}

std::int64_t AffineUtility::coefficient(std::string_view var) const
{
    if (is_counter(var)) return coeff_n;
    auto it = coeffs.find(std::string(var));
    return it == coeffs.end() ? 0 : it->second;
}

void AffineUtility::set_coefficient(std::string_view var, std::int64_t value)
{
    if (is_counter(var)) {
        coeff_n = value;
    } else if (value == 0) {
        coeffs.erase(std::string(var));
    } else {
        coeffs[std::string(var)] = value;
    }
}

AffineUtility& AffineUtility::operator+=(const AffineUtility& other)
{
    coeff_n = checked_add(coeff_n, other.coeff_n);
    for (const auto& [name, c] : other.coeffs) set_coefficient(name, checked_add(coefficient(name), c));
    constant = checked_add(constant, other.constant);
    return *this;
}

AffineUtility& AffineUtility::operator-=(const AffineUtility& other)
{
    return *this += other * -1;
}

AffineUtility& AffineUtility::operator*=(std::int64_t k)
{
    if (k == 0) return *this = AffineUtility{};
    coeff_n = checked_mul(coeff_n, k);
    for (auto& [name, c] : coeffs) c = checked_mul(c, k);
    constant = checked_mul(constant, k);
    return *this;
}

std::string AffineUtility::to_string() const
{
    std::ostringstream out;
    bool first = true;
    auto term = [&](std::int64_t c, const std::string& var) {
        if (c == 0) return;
        const std::int64_t mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (var.empty()) {
            out << mag;
        } else {
            if (mag != 1) out << mag << '*';
            out << var;
        }
        first = false;
    };
    for (const auto& [name, c] : coeffs) term(c, name);
    term(coeff_n, std::string(kCounter));
    term(constant, "");
    if (first) out << '0';
    return out.str();
}

std::int64_t affine_eval(const AffineUtility& e, const Valuation& val)
{
    auto lookup = [&](const std::string& var) {
        auto it = val.find(var);
        if (it == val.end()) throw std::out_of_range("valuation has no binding for '" + var + "'");
        return it->second;
    };
    std::int64_t r = e.constant;
    if (e.coeff_n != 0) r = checked_add(r, checked_mul(e.coeff_n, lookup(std::string(kCounter))));
    for (const auto& [name, c] : e.coeffs) r = checked_add(r, checked_mul(c, lookup(name)));
    return r;
}

AffineUtility affine_shift(const AffineUtility& e, std::int64_t delta)
{
    AffineUtility r = e;
    r.constant = checked_add(r.constant, checked_mul(e.coeff_n, delta));
    return r;
}

AffineUtility affine_substitute(const AffineUtility& e, std::string_view var, std::int64_t value)
{
    AffineUtility r = e;
    const std::int64_t c = e.coefficient(var);
    r.set_coefficient(var, 0);
    r.constant = checked_add(r.constant, checked_mul(c, value));
    return r;
}

AffineUtility affine_shift_by_variable(const AffineUtility& e, const std::string& var)
{
    AffineUtility r = e;
    r.set_coefficient(var, checked_add(r.coefficient(var), e.coeff_n));
    return r;
}

std::string_view relation_symbol(Relation rel)
{
    switch (rel) {
    case Relation::Ge: return ">=";
    case Relation::Le: return "<=";
    case Relation::Eq: return "=";
    case Relation::Lt: return "<";
    case Relation::Gt: return ">";
    }
    return "?";
}

std::int64_t ConstraintBox::lower_bound(std::string_view var) const
{
    if (is_counter(var)) return n_min;
    auto it = param_bounds.find(std::string(var));
    return it == param_bounds.end() ? 0 : it->second;
}

std::string_view verdict_name(SymbolicTruth::Verdict v)
{
    switch (v) {
    case SymbolicTruth::Verdict::Holds: return "Holds";
    case SymbolicTruth::Verdict::Fails: return "Fails";
    case SymbolicTruth::Verdict::Unknown: return "Unknown";
    }
    return "?";
}

bool compare(std::int64_t lhs, Relation rel, std::int64_t rhs)
{
    switch (rel) {
    case Relation::Ge: return lhs >= rhs;
    case Relation::Le: return lhs <= rhs;
    case Relation::Eq: return lhs == rhs;
    case Relation::Lt: return lhs < rhs;
    case Relation::Gt: return lhs > rhs;
    }
    return false;
}

namespace {

// Variables that cancel in the difference still get a binding, so the
// witness evaluates both sides.
SymbolicTruth complete(SymbolicTruth t, const AffineUtility& lhs, const AffineUtility& rhs, const ConstraintBox& box)
{
    if (!t.witness) return t;
    for (const AffineUtility* e : {&lhs, &rhs}) {
        for (const auto& [name, c] : e->coeffs) t.witness->emplace(name, box.lower_bound(name));
    }
    return t;
}

SymbolicTruth holds_forall_raw(const AffineUtility& lhs, const AffineUtility& rhs, Relation rel,
                               const ConstraintBox& box)
{
    switch (rel) {
    case Relation::Ge: return nonnegative_forall(lhs - rhs, box);
    case Relation::Le: return nonnegative_forall(rhs - lhs, box);
    case Relation::Gt: return nonnegative_forall(lhs - rhs - 1, box);
    case Relation::Lt: return nonnegative_forall(rhs - lhs - 1, box);
    case Relation::Eq: {
        SymbolicTruth ge = nonnegative_forall(lhs - rhs, box);
        if (!ge.holds()) return ge;
        return nonnegative_forall(rhs - lhs, box);
    }
    }
    return {};
}

} // namespace

SymbolicTruth holds_forall(const AffineUtility& lhs, const AffineUtility& rhs, Relation rel,
                           const ConstraintBox& box)
{
    return complete(holds_forall_raw(lhs, rhs, rel, box), lhs, rhs, box);
}

SymbolicTruth find_witness(const AffineUtility& lhs, const AffineUtility& rhs, Relation rel,
                           const ConstraintBox& box)
{
    using V = SymbolicTruth::Verdict;
    auto dual = [&](Relation negated) -> SymbolicTruth {
        SymbolicTruth t = holds_forall(lhs, rhs, negated, box);
        if (t.fails()) return {V::Holds, t.witness};
        return {V::Fails, std::nullopt};
    };
    switch (rel) {
    case Relation::Ge: return dual(Relation::Lt);
    case Relation::Le: return dual(Relation::Gt);
    case Relation::Lt: return dual(Relation::Ge);
    case Relation::Gt: return dual(Relation::Le);
    case Relation::Eq: return complete(zero_exists(lhs - rhs, box), lhs, rhs, box);
    }
    return {};
}

} // namespace cogame
