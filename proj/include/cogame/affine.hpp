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

#ifndef COGAME_AFFINE_HPP
#define COGAME_AFFINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cogame {

/// Name of the stage counter variable.
inline constexpr std::string_view kCounter = "n";

/// Assignment of integers to the stage counter `n` and to model parameters.
using Valuation = std::map<std::string, std::int64_t>;

class ArithmeticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Integer-affine expression  c_n * n + sum_p c_p * p + constant.
 *
 * Zero coefficients are never stored, so structural equality is semantic
 * equality. All arithmetic is exact; overflow throws ArithmeticError.
 */
struct AffineUtility {
    std::int64_t coeff_n = 0;
    std::map<std::string, std::int64_t> coeffs;
    std::int64_t constant = 0;

    AffineUtility() = default;
    AffineUtility(std::int64_t c) : constant(c) {} // NOLINT: implicit from literal is intended

    static AffineUtility counter(std::int64_t coefficient = 1);
    static AffineUtility parameter(const std::string& name, std::int64_t coefficient = 1);

    /// Coefficient of a variable; `n` addresses the stage counter.
    std::int64_t coefficient(std::string_view var) const;
    void set_coefficient(std::string_view var, std::int64_t value);

    bool is_constant() const { return coeff_n == 0 && coeffs.empty(); }

    AffineUtility& operator+=(const AffineUtility& other);
    AffineUtility& operator-=(const AffineUtility& other);
    AffineUtility& operator*=(std::int64_t k);

    friend AffineUtility operator+(AffineUtility a, const AffineUtility& b) { return a += b; }
    friend AffineUtility operator-(AffineUtility a, const AffineUtility& b) { return a -= b; }
    friend AffineUtility operator*(AffineUtility a, std::int64_t k) { return a *= k; }
    friend AffineUtility operator*(std::int64_t k, AffineUtility a) { return a *= k; }
    friend AffineUtility operator-(AffineUtility a) { return a *= -1; }

    friend bool operator==(const AffineUtility&, const AffineUtility&) = default;

    /// Canonical text: parameters in name order, then `n`, then the constant,
    /// e.g. "v + n + 1", "2*n - 3", "0".
    std::string to_string() const;
};

/// Exact value at a valuation. Throws std::out_of_range on a missing binding.
std::int64_t affine_eval(const AffineUtility& e, const Valuation& val);

/// e(n + delta).
AffineUtility affine_shift(const AffineUtility& e, std::int64_t delta);

/// Replace variable `var` by the constant `value`.
AffineUtility affine_substitute(const AffineUtility& e, std::string_view var, std::int64_t value);

/// Replace the counter `n` by `n + var`.
AffineUtility affine_shift_by_variable(const AffineUtility& e, const std::string& var);

enum class Relation { Ge, Le, Eq, Lt, Gt };

std::string_view relation_symbol(Relation rel);

/// Lower-bounded integer box  n >= n_min, p >= bound(p).
/// Variables without an entry in `param_bounds` are bounded below by 0.
struct ConstraintBox {
    std::int64_t n_min = 0;
    std::map<std::string, std::int64_t> param_bounds;

    std::int64_t lower_bound(std::string_view var) const;
    friend bool operator==(const ConstraintBox&, const ConstraintBox&) = default;
};

struct SymbolicTruth {
    enum class Verdict { Holds, Fails, Unknown };

    Verdict verdict = Verdict::Unknown;
    /// For holds_forall: a falsifying point when Fails.
    /// For find_witness: a satisfying point when Holds.
    std::optional<Valuation> witness;

    bool holds() const { return verdict == Verdict::Holds; }
    bool fails() const { return verdict == Verdict::Fails; }
};

std::string_view verdict_name(SymbolicTruth::Verdict v);

/// Decide  forall x in box: lhs rel rhs  for rel in {>=, <=, =, <, >}.
/// Never Unknown. A Fails witness lies in the box and falsifies the relation.
SymbolicTruth holds_forall(const AffineUtility& lhs, const AffineUtility& rhs, Relation rel,
                           const ConstraintBox& box);

/// Decide  exists x in box: lhs rel rhs. Holds carries a satisfying point.
SymbolicTruth find_witness(const AffineUtility& lhs, const AffineUtility& rhs, Relation rel,
                           const ConstraintBox& box);

/// Whether `rel` holds between two integers.
bool compare(std::int64_t lhs, Relation rel, std::int64_t rhs);

} // namespace cogame

#endif
