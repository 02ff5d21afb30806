#pragma once

// Probability mass functions over an alphabet, and Shannon entropy in bits.
// An alphabet may carry different PMFs in different conditions, so the PMF
// is a value type of its own, permanently bound to one alphabet.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cbratio/alphabet.hpp"
#include "cbratio/errors.hpp"

namespace cbr {

/// Tolerance applied wherever a probability vector must sum to one.
inline constexpr double kNormTolerance = 1e-9;

/// A probability mass function bound to one alphabet. The validating
/// constructor rejects out-of-tolerance inputs instead of renormalizing
/// them; use make_pmf to normalize raw weights.
class Pmf {
public:
    Pmf(AlphabetRef alphabet, std::vector<double> probs)
        : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
        if (!alphabet_) {
            throw ValidationError("null-alphabet", "pmf needs an alphabet");
        }
        if (probs_.size() != alphabet_->size()) {
            throw ValidationError("length-mismatch",
                                  "pmf over '" + alphabet_->name() + "' has " +
                                      std::to_string(probs_.size()) + " probabilities for " +
                                      std::to_string(alphabet_->size()) + " letters");
        }
        double total = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0)) { // also rejects NaN
                throw ValidationError("negative-prob", "pmf over '" + alphabet_->name() +
                                                           "' has a negative probability");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > kNormTolerance) {
            throw ValidationError("not-normalized", "pmf over '" + alphabet_->name() +
                                                        "' sums to " + std::to_string(total));
        }
    }

    const AlphabetRef& alphabet() const noexcept { return alphabet_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t id) const { return probs_.at(id); }

private:
    AlphabetRef alphabet_;
    std::vector<double> probs_;
};

/// Normalizing constructor: probs = weights / sum(weights).
inline Pmf make_pmf(const AlphabetRef& alphabet, const std::vector<double>& weights) {
    if (!alphabet) {
        throw ValidationError("null-alphabet", "make_pmf needs an alphabet");
    }
    if (weights.size() != alphabet->size()) {
        throw ValidationError("length-mismatch",
                              "make_pmf over '" + alphabet->name() + "' got " +
                                  std::to_string(weights.size()) + " weights for " +
                                  std::to_string(alphabet->size()) + " letters");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw ValidationError("negative-weight",
                                  "make_pmf over '" + alphabet->name() + "' got a negative weight");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw ValidationError("zero-weight-sum",
                              "make_pmf over '" + alphabet->name() + "' got all-zero weights");
    }
    std::vector<double> probs(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        probs[i] = weights[i] / total;
    }
    return Pmf(alphabet, std::move(probs));
}

inline Pmf uniform_pmf(const AlphabetRef& alphabet) {
    if (!alphabet) {
        throw ValidationError("null-alphabet", "uniform_pmf needs an alphabet");
    }
    return make_pmf(alphabet, std::vector<double>(alphabet->size(), 1.0));
}

/// Shannon entropy in bits: -sum p_i * log2(p_i), with 0*log2(0) = 0.
/// Terms are summed in ascending letter id order.
inline double entropy(const Pmf& p) {
    double h = 0.0;
    for (double x : p.probs()) {
        if (x > 0.0) {
            h -= x * std::log2(x);
        }
    }
    // A probability may exceed 1 by up to the normalization tolerance,
    // contributing a term around -1e-18; keep the stated range [0, log2 n].
    return h < 0.0 ? 0.0 : h;
}

/// The entropy upper bound log2(|alphabet|), attained by the uniform Pmf.
inline double max_entropy(const Alphabet& alphabet) {
    return std::log2(static_cast<double>(alphabet.size()));
}

inline double max_entropy(const AlphabetRef& alphabet) {
    if (!alphabet) {
        throw ValidationError("null-alphabet", "max_entropy needs an alphabet");
    }
    return max_entropy(*alphabet);
}

inline void require_same_alphabet(const Pmf& p, const Pmf& q, const char* where) {
    if (!same_alphabet(p.alphabet(), q.alphabet())) {
        throw AlphabetMismatchError(std::string(where) + ": pmfs are bound to different alphabets ('" +
                                    p.alphabet()->name() + "' vs '" + q.alphabet()->name() + "')");
    }
}

} // namespace cbr
