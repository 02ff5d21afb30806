#pragma once

// Reverse transformations and viewer knowledge. A knowledge model turns a
// forward transformation into a reverse channel R: Z_out -> Z_in describing
// how a viewer would reconstruct inputs from outputs:
//
//   UniformPreimage  no knowledge beyond the map itself; every output letter
//                    is read back as "any of its preimages, equally likely".
//   Posterior        Bayes-optimal reconstruction with respect to a prior on
//                    the input alphabet (the informed viewer).
//   Custom           an explicit row-stochastic matrix.
//
// Potential distortion is the divergence of the reconstructed distribution
// from the original one, in that order: D(reconstructed || original).

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbratio/divergence.hpp"
#include "cbratio/errors.hpp"
#include "cbratio/pmf.hpp"
#include "cbratio/transform.hpp"

namespace cbr {

class KnowledgeModel;
using KnowledgeModelRef = std::shared_ptr<const KnowledgeModel>;

class KnowledgeModel {
public:
    enum class Kind { UniformPreimage, Posterior, Custom };

    /// Spread each output letter's mass evenly over its preimage. Only
    /// defined for deterministic forwards. Output letters with an empty
    /// preimage get a uniform-over-all-inputs row so the channel stays
    /// row-stochastic; reconstruct() raises EmptyPreimageError if such a
    /// letter ever carries positive probability.
    static KnowledgeModelRef uniform_preimage(TransformationRef forward,
                                              std::string name = "uniform-preimage") {
        require_forward(forward, name);
        if (!forward->is_deterministic()) {
            throw ValidationError("uniform-preimage-needs-deterministic",
                                  "knowledge model '" + name +
                                      "' requires a deterministic forward transformation");
        }
        return KnowledgeModelRef(new KnowledgeModel(Kind::UniformPreimage, std::move(forward),
                                                    std::nullopt, {}, std::move(name)));
    }

    /// Bayes posterior of `prior` through the forward transformation.
    /// Rows for outputs with zero marginal probability under the prior are
    /// uniform over the full input alphabet, keeping the channel total.
    static KnowledgeModelRef posterior(TransformationRef forward, Pmf prior,
                                       std::string name = "posterior") {
        require_forward(forward, name);
        if (!same_alphabet(prior.alphabet(), forward->input())) {
            throw AlphabetMismatchError("knowledge model '" + name + "': prior over '" +
                                        prior.alphabet()->name() +
                                        "' does not match input alphabet '" +
                                        forward->input()->name() + "'");
        }
        return KnowledgeModelRef(new KnowledgeModel(Kind::Posterior, std::move(forward),
                                                    std::move(prior), {}, std::move(name)));
    }

    /// An explicit reverse channel: |output| rows, each a distribution over
    /// the input letters.
    static KnowledgeModelRef custom(TransformationRef forward,
                                    std::vector<std::vector<double>> rows,
                                    std::string name = "custom") {
        require_forward(forward, name);
        if (rows.size() != forward->output()->size()) {
            throw ValidationError("length-mismatch",
                                  "knowledge model '" + name + "' has " +
                                      std::to_string(rows.size()) + " rows for " +
                                      std::to_string(forward->output()->size()) +
                                      " output letters");
        }
        for (const auto& row : rows) {
            if (row.size() != forward->input()->size()) {
                throw ValidationError("length-mismatch",
                                      "knowledge model '" + name + "' has a row of " +
                                          std::to_string(row.size()) + " entries for " +
                                          std::to_string(forward->input()->size()) +
                                          " input letters");
            }
            double total = 0.0;
            for (double v : row) {
                if (!(v >= 0.0)) {
                    throw ValidationError("negative-prob", "knowledge model '" + name +
                                                               "' has a negative entry");
                }
                total += v;
            }
            if (std::abs(total - 1.0) > kNormTolerance) {
                throw ValidationError("bad-row-sum", "knowledge model '" + name +
                                                         "' has a row summing to " +
                                                         std::to_string(total));
            }
        }
        return KnowledgeModelRef(new KnowledgeModel(Kind::Custom, std::move(forward),
                                                    std::nullopt, std::move(rows),
                                                    std::move(name)));
    }

    Kind kind() const noexcept { return kind_; }
    const TransformationRef& forward() const noexcept { return forward_; }
    const std::string& name() const noexcept { return name_; }

    /// The prior behind a Posterior model, nullptr otherwise.
    const Pmf* prior() const noexcept { return prior_ ? &*prior_ : nullptr; }

    /// The |output| x |input| row-stochastic reverse channel. Materialized
    /// on first use and cached; safe under concurrent readers.
    const std::vector<std::vector<double>>& reverse_channel() const {
        std::call_once(materialize_once_, [this] { materialize(); });
        return channel_;
    }

    /// Output letter ids whose preimage is empty (UniformPreimage only).
    const std::vector<bool>& empty_preimages() const {
        std::call_once(materialize_once_, [this] { materialize(); });
        return empty_preimage_;
    }

    KnowledgeModel(const KnowledgeModel&) = delete;
    KnowledgeModel& operator=(const KnowledgeModel&) = delete;

private:
    KnowledgeModel(Kind kind, TransformationRef forward, std::optional<Pmf> prior,
                   std::vector<std::vector<double>> custom_rows, std::string name)
        : kind_(kind),
          forward_(std::move(forward)),
          prior_(std::move(prior)),
          name_(std::move(name)),
          channel_(std::move(custom_rows)) {}

    static void require_forward(const TransformationRef& forward, const std::string& name) {
        if (!forward) {
            throw ValidationError("null-transformation",
                                  "knowledge model '" + name + "' needs a forward transformation");
        }
    }

    void materialize() const {
        const std::size_t n_in = forward_->input()->size();
        const std::size_t n_out = forward_->output()->size();
        switch (kind_) {
            case Kind::Custom:
                return; // rows were stored at construction
            case Kind::UniformPreimage: {
                const auto& map = forward_->as_deterministic()->map;
                std::vector<std::size_t> counts(n_out, 0);
                for (std::size_t o : map) ++counts[o];
                channel_.assign(n_out, std::vector<double>(n_in, 0.0));
                empty_preimage_.assign(n_out, false);
                for (std::size_t o = 0; o < n_out; ++o) {
                    if (counts[o] == 0) {
                        empty_preimage_[o] = true;
                        for (double& v : channel_[o]) v = 1.0 / static_cast<double>(n_in);
                    }
                }
                for (std::size_t i = 0; i < n_in; ++i) {
                    channel_[map[i]][i] = 1.0 / static_cast<double>(counts[map[i]]);
                }
                return;
            }
            case Kind::Posterior: {
                channel_.assign(n_out, std::vector<double>(n_in, 0.0));
                const auto& prior = prior_->probs();
                for (std::size_t o = 0; o < n_out; ++o) {
                    double marginal = 0.0;
                    for (std::size_t i = 0; i < n_in; ++i) {
                        const double joint = prior[i] * forward_->transition(i, o);
                        channel_[o][i] = joint;
                        marginal += joint;
                    }
                    if (marginal > 0.0) {
                        for (double& v : channel_[o]) v /= marginal;
                    } else {
                        for (double& v : channel_[o]) v = 1.0 / static_cast<double>(n_in);
                    }
                }
                return;
            }
        }
    }

    Kind kind_;
    TransformationRef forward_;
    std::optional<Pmf> prior_;
    std::string name_;

    mutable std::once_flag materialize_once_;
    mutable std::vector<std::vector<double>> channel_;
    mutable std::vector<bool> empty_preimage_;
};

/// Reconstruct an input distribution from an output distribution:
/// P'(i) = sum_o p_out(o) * R[o][i].
inline Pmf reconstruct(const Pmf& p_out, const KnowledgeModel& k) {
    if (!same_alphabet(p_out.alphabet(), k.forward()->output())) {
        throw AlphabetMismatchError("reconstruct: pmf over '" + p_out.alphabet()->name() +
                                    "' does not match output alphabet '" +
                                    k.forward()->output()->name() + "' of '" +
                                    k.forward()->name() + "'");
    }
    const auto& channel = k.reverse_channel();
    if (k.kind() == KnowledgeModel::Kind::UniformPreimage) {
        const auto& empty = k.empty_preimages();
        for (std::size_t o = 0; o < p_out.size(); ++o) {
            if (p_out.probs()[o] > 0.0 && empty[o]) {
                throw EmptyPreimageError(
                    "reconstruct: output letter '" + k.forward()->output()->letters()[o].label +
                    "' carries probability but has no preimage under '" + k.forward()->name() +
                    "'");
            }
        }
    }
    std::vector<double> rec(k.forward()->input()->size(), 0.0);
    for (std::size_t o = 0; o < p_out.size(); ++o) {
        const double po = p_out.probs()[o];
        if (po == 0.0) continue;
        const auto& row = channel[o];
        for (std::size_t i = 0; i < rec.size(); ++i) {
            rec[i] += po * row[i];
        }
    }
    return Pmf(k.forward()->input(), std::move(rec));
}

/// Potential distortion: the divergence of the reconstruction from the
/// original, D(p_reconstructed || q_original). The argument order is part
/// of the contract.
inline DivergenceResult potential_distortion(const Pmf& p_reconstructed, const Pmf& q_original,
                                             const DivergenceKind& kind) {
    require_same_alphabet(p_reconstructed, q_original, "potential_distortion");
    return divergence(kind, p_reconstructed, q_original);
}

} // namespace cbr
