#pragma once

// Divergence measures between two PMFs over the same alphabet. KL is the
// canonical measure of potential distortion; it is unbounded, so bounded
// alternatives (Jensen-Shannon, clamped KL) sit behind the same interface.
// An infinite KL value is a legitimate measurement result, never an error.

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "cbratio/errors.hpp"
#include "cbratio/pmf.hpp"

namespace cbr {

class DivergenceKind {
public:
    enum class Tag { KL, JensenShannon, ClampedKL };

    static DivergenceKind kl() noexcept { return DivergenceKind(Tag::KL, 0.0); }
    static DivergenceKind jensen_shannon() noexcept {
        return DivergenceKind(Tag::JensenShannon, 0.0);
    }
    static DivergenceKind clamped_kl(double cap_bits) {
        if (!(cap_bits > 0.0)) {
            throw ValidationError("bad-cap", "clamped-kl cap must be a positive number of bits");
        }
        return DivergenceKind(Tag::ClampedKL, cap_bits);
    }

    /// Accepts "kl", "js", "clamped-kl:<cap>".
    static DivergenceKind parse(const std::string& text) {
        if (text == "kl") return kl();
        if (text == "js") return jensen_shannon();
        constexpr std::string_view prefix = "clamped-kl:";
        if (text.rfind(prefix, 0) == 0) {
            const std::string cap_text = text.substr(prefix.size());
            std::size_t used = 0;
            double cap = 0.0;
            try {
                cap = std::stod(cap_text, &used);
            } catch (const std::exception&) {
                throw ValidationError("bad-divergence",
                                      "cannot read clamped-kl cap from '" + text + "'");
            }
            if (used != cap_text.size()) {
                throw ValidationError("bad-divergence",
                                      "cannot read clamped-kl cap from '" + text + "'");
            }
            return clamped_kl(cap);
        }
        throw ValidationError("bad-divergence", "unknown divergence '" + text +
                                                    "' (expected kl, js or clamped-kl:<cap>)");
    }

    Tag tag() const noexcept { return tag_; }

    /// Cap in bits; meaningful for ClampedKL only.
    double cap() const noexcept { return cap_; }

    std::string to_string() const {
        switch (tag_) {
            case Tag::KL: return "kl";
            case Tag::JensenShannon: return "js";
            case Tag::ClampedKL: {
                char buf[48];
                std::snprintf(buf, sizeof(buf), "clamped-kl:%g", cap_);
                return buf;
            }
        }
        return "kl";
    }

    friend bool operator==(const DivergenceKind& a, const DivergenceKind& b) noexcept {
        return a.tag_ == b.tag_ && (a.tag_ != Tag::ClampedKL || a.cap_ == b.cap_);
    }

private:
    DivergenceKind(Tag tag, double cap) : tag_(tag), cap_(cap) {}

    Tag tag_;
    double cap_;
};

/// A divergence value in bits. `bits` is +infinity exactly when KL hits an
/// absolute-continuity failure (some p_i > 0 where q_i = 0).
struct DivergenceResult {
    double bits = 0.0;
    DivergenceKind kind = DivergenceKind::kl();

    bool is_infinite() const noexcept { return std::isinf(bits); }
};

/// D_KL(p || q) in bits: sum over letters with p_i > 0 of p_i*log2(p_i/q_i).
/// Not symmetric. Returns infinity when some p_i > 0 has q_i = 0.
inline DivergenceResult kl_divergence(const Pmf& p, const Pmf& q) {
    require_same_alphabet(p, q, "kl_divergence");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.probs()[i];
        if (pi <= 0.0) continue;
        const double qi = q.probs()[i];
        if (qi == 0.0) {
            return {std::numeric_limits<double>::infinity(), DivergenceKind::kl()};
        }
        sum += pi * std::log2(pi / qi);
    }
    return {sum < 0.0 ? 0.0 : sum, DivergenceKind::kl()};
}

/// Jensen-Shannon divergence in bits, base 2: always finite, symmetric,
/// and bounded by 1.
inline DivergenceResult js_divergence(const Pmf& p, const Pmf& q) {
    require_same_alphabet(p, q, "js_divergence");
    double kl_p = 0.0;
    double kl_q = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.probs()[i];
        const double qi = q.probs()[i];
        const double mi = 0.5 * (pi + qi);
        if (pi > 0.0) kl_p += pi * std::log2(pi / mi);
        if (qi > 0.0) kl_q += qi * std::log2(qi / mi);
    }
    double jsd = 0.5 * kl_p + 0.5 * kl_q;
    return {jsd < 0.0 ? 0.0 : jsd, DivergenceKind::jensen_shannon()};
}

/// Dispatch on the requested kind. ClampedKL(cap) returns min(KL, cap),
/// mapping the infinite case to the cap.
inline DivergenceResult divergence(const DivergenceKind& kind, const Pmf& p, const Pmf& q) {
    switch (kind.tag()) {
        case DivergenceKind::Tag::KL:
            return kl_divergence(p, q);
        case DivergenceKind::Tag::JensenShannon:
            return js_divergence(p, q);
        case DivergenceKind::Tag::ClampedKL: {
            DivergenceResult raw = kl_divergence(p, q);
            const double capped =
                (raw.is_infinite() || raw.bits > kind.cap()) ? kind.cap() : raw.bits;
            return {capped, kind};
        }
    }
    throw ValidationError("bad-divergence", "unhandled divergence kind");
}

} // namespace cbr
