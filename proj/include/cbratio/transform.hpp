#pragma once

// Forward transformations F: Z_in -> Z_out. A transformation is either a
// deterministic letter-to-letter table (the many-to-one maps behind most
// information loss) or a row-stochastic channel matrix (noisy stages such
// as perception). Transformations are immutable and shared by reference.

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cbratio/errors.hpp"
#include "cbratio/pmf.hpp"

namespace cbr {

class Transformation;
using TransformationRef = std::shared_ptr<const Transformation>;

class Transformation {
public:
    /// map[input id] = output id.
    struct Deterministic {
        std::vector<std::size_t> map;
    };

    /// rows[input id] = distribution over output ids.
    struct Stochastic {
        std::vector<std::vector<double>> rows;
    };

    static TransformationRef deterministic(AlphabetRef input, AlphabetRef output,
                                           std::vector<std::size_t> map, std::string name) {
        require_alphabets(input, output, name);
        if (map.size() != input->size()) {
            throw ValidationError("length-mismatch",
                                  "transformation '" + name + "' maps " +
                                      std::to_string(map.size()) + " letters but '" +
                                      input->name() + "' has " + std::to_string(input->size()));
        }
        for (std::size_t id : map) {
            if (id >= output->size()) {
                throw ValidationError("bad-letter-id",
                                      "transformation '" + name + "' maps onto output id " +
                                          std::to_string(id) + " but '" + output->name() +
                                          "' has only " + std::to_string(output->size()) +
                                          " letters");
            }
        }
        return TransformationRef(new Transformation(std::move(input), std::move(output),
                                                    Deterministic{std::move(map)},
                                                    std::move(name)));
    }

    static TransformationRef stochastic(AlphabetRef input, AlphabetRef output,
                                        std::vector<std::vector<double>> rows,
                                        std::string name) {
        require_alphabets(input, output, name);
        if (rows.size() != input->size()) {
            throw ValidationError("length-mismatch",
                                  "transformation '" + name + "' has " +
                                      std::to_string(rows.size()) + " rows but '" +
                                      input->name() + "' has " + std::to_string(input->size()) +
                                      " letters");
        }
        for (const auto& row : rows) {
            if (row.size() != output->size()) {
                throw ValidationError("length-mismatch",
                                      "transformation '" + name + "' has a row of " +
                                          std::to_string(row.size()) + " entries for " +
                                          std::to_string(output->size()) + " output letters");
            }
            double total = 0.0;
            for (double v : row) {
                if (!(v >= 0.0)) {
                    throw ValidationError("negative-prob", "transformation '" + name +
                                                               "' has a negative channel entry");
                }
                total += v;
            }
            if (std::abs(total - 1.0) > kNormTolerance) {
                throw ValidationError("bad-row-sum", "transformation '" + name +
                                                         "' has a channel row summing to " +
                                                         std::to_string(total));
            }
        }
        return TransformationRef(new Transformation(std::move(input), std::move(output),
                                                    Stochastic{std::move(rows)},
                                                    std::move(name)));
    }

    /// The self-loop F(z) = z on one alphabet object.
    static TransformationRef identity(const AlphabetRef& alphabet) {
        if (!alphabet) {
            throw ValidationError("null-alphabet", "identity needs an alphabet");
        }
        std::vector<std::size_t> map(alphabet->size());
        for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
        return deterministic(alphabet, alphabet, std::move(map),
                             "identity(" + alphabet->name() + ")");
    }

    const AlphabetRef& input() const noexcept { return input_; }
    const AlphabetRef& output() const noexcept { return output_; }
    const std::string& name() const noexcept { return name_; }

    bool is_deterministic() const noexcept {
        return std::holds_alternative<Deterministic>(kind_);
    }

    const Deterministic* as_deterministic() const noexcept {
        return std::get_if<Deterministic>(&kind_);
    }

    const Stochastic* as_stochastic() const noexcept { return std::get_if<Stochastic>(&kind_); }

    /// P(output = o | input = i) regardless of representation.
    double transition(std::size_t i, std::size_t o) const {
        if (const auto* det = as_deterministic()) {
            return det->map[i] == o ? 1.0 : 0.0;
        }
        return std::get<Stochastic>(kind_).rows[i][o];
    }

    Transformation(const Transformation&) = delete;
    Transformation& operator=(const Transformation&) = delete;

private:
    Transformation(AlphabetRef input, AlphabetRef output,
                   std::variant<Deterministic, Stochastic> kind, std::string name)
        : input_(std::move(input)),
          output_(std::move(output)),
          kind_(std::move(kind)),
          name_(std::move(name)) {}

    static void require_alphabets(const AlphabetRef& input, const AlphabetRef& output,
                                  const std::string& name) {
        if (!input || !output) {
            throw ValidationError("null-alphabet",
                                  "transformation '" + name + "' needs input and output alphabets");
        }
    }

    AlphabetRef input_;
    AlphabetRef output_;
    std::variant<Deterministic, Stochastic> kind_;
    std::string name_;
};

/// Push an input PMF through a transformation: the output PMF it induces.
inline Pmf pushforward(const Pmf& p_in, const Transformation& f) {
    if (!same_alphabet(p_in.alphabet(), f.input())) {
        throw AlphabetMismatchError("pushforward: pmf over '" + p_in.alphabet()->name() +
                                    "' does not match input alphabet '" + f.input()->name() +
                                    "' of transformation '" + f.name() + "'");
    }
    std::vector<double> out(f.output()->size(), 0.0);
    if (const auto* det = f.as_deterministic()) {
        for (std::size_t i = 0; i < p_in.size(); ++i) {
            out[det->map[i]] += p_in.probs()[i];
        }
    } else {
        const auto& rows = f.as_stochastic()->rows;
        for (std::size_t i = 0; i < p_in.size(); ++i) {
            const double pi = p_in.probs()[i];
            if (pi == 0.0) continue;
            for (std::size_t o = 0; o < out.size(); ++o) {
                out[o] += pi * rows[i][o];
            }
        }
    }
    return Pmf(f.output(), std::move(out));
}

/// The input letters that can produce output letter `o`: the inverse image
/// for a deterministic map, the support column for a stochastic channel.
/// May be empty. Returned in ascending letter id order.
inline std::vector<Letter> preimage(const Transformation& f, const Letter& o) {
    if (!f.output()->contains(o)) {
        throw ValidationError("unknown-letter", "preimage: letter '" + o.label +
                                                    "' is not in output alphabet '" +
                                                    f.output()->name() + "'");
    }
    std::vector<Letter> result;
    if (const auto* det = f.as_deterministic()) {
        for (std::size_t i = 0; i < det->map.size(); ++i) {
            if (det->map[i] == o.id) result.push_back(f.input()->letters()[i]);
        }
    } else {
        const auto& rows = f.as_stochastic()->rows;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][o.id] > 0.0) result.push_back(f.input()->letters()[i]);
        }
    }
    return result;
}

/// Chain two transformations: apply `f` first, then `g`. Requires
/// f.output and g.input to be the same alphabet object. Deterministic
/// composed with deterministic stays deterministic; anything stochastic
/// yields the product channel matrix, materialized eagerly.
inline TransformationRef compose(const TransformationRef& f, const TransformationRef& g) {
    if (!f || !g) {
        throw ValidationError("null-transformation", "compose needs two transformations");
    }
    if (!same_alphabet(f->output(), g->input())) {
        throw AlphabetMismatchError("compose: output alphabet '" + f->output()->name() + "' of '" +
                                    f->name() + "' is not the input alphabet '" +
                                    g->input()->name() + "' of '" + g->name() + "'");
    }
    const std::string name = f->name() + " | " + g->name();
    const auto* fd = f->as_deterministic();
    const auto* gd = g->as_deterministic();
    if (fd && gd) {
        std::vector<std::size_t> map(fd->map.size());
        for (std::size_t i = 0; i < map.size(); ++i) {
            map[i] = gd->map[fd->map[i]];
        }
        return Transformation::deterministic(f->input(), g->output(), std::move(map), name);
    }
    const std::size_t n_in = f->input()->size();
    const std::size_t n_mid = f->output()->size();
    const std::size_t n_out = g->output()->size();
    std::vector<std::vector<double>> rows(n_in, std::vector<double>(n_out, 0.0));
    for (std::size_t i = 0; i < n_in; ++i) {
        for (std::size_t m = 0; m < n_mid; ++m) {
            const double fm = f->transition(i, m);
            if (fm == 0.0) continue;
            for (std::size_t o = 0; o < n_out; ++o) {
                const double gm = g->transition(m, o);
                if (gm != 0.0) rows[i][o] += fm * gm;
            }
        }
    }
    return Transformation::stochastic(f->input(), g->output(), std::move(rows), name);
}

} // namespace cbr
