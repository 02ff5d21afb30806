#pragma once

// The cost-benefit measure itself. For a stage with input entropy H_in,
// output entropy H_out, reconstruction divergence PD and cost Ct:
//
//   alphabet compression  AC = H_in - H_out
//   benefit                  = AC - PD
//   ratio                    = benefit / Ct
//
// AC can be negative for stochastic stages (a noisy channel can raise
// entropy); PD can be infinite under KL; benefit is then -infinity. All of
// these are reported, not rejected. A zero cost makes the ratio undefined
// while the benefit stays intact.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbratio/divergence.hpp"
#include "cbratio/errors.hpp"
#include "cbratio/pmf.hpp"
#include "cbratio/reconstruction.hpp"
#include "cbratio/transform.hpp"

namespace cbr {

enum class CostUnit { Energy, Time, Money, Abstract };

inline std::string to_string(CostUnit unit) {
    switch (unit) {
        case CostUnit::Energy: return "energy";
        case CostUnit::Time: return "time";
        case CostUnit::Money: return "money";
        case CostUnit::Abstract: return "abstract";
    }
    return "abstract";
}

inline CostUnit parse_cost_unit(const std::string& text) {
    if (text == "energy") return CostUnit::Energy;
    if (text == "time") return CostUnit::Time;
    if (text == "money") return CostUnit::Money;
    if (text == "abstract") return CostUnit::Abstract;
    throw ValidationError("bad-unit", "unknown cost unit '" + text +
                                          "' (expected energy, time, money or abstract)");
}

/// Cost of running a stage. `includes_reconstruction` records whether the
/// amount covers the reconstruction effort as well as the forward
/// transformation; the engine carries the flag through, it does not split
/// the amount.
struct CostSpec {
    double amount = 1.0;
    CostUnit unit = CostUnit::Abstract;
    bool includes_reconstruction = false;
};

/// One measurable step: a transformation, the knowledge model used to
/// reconstruct its input, a cost, and the divergence scoring PD.
struct Stage {
    TransformationRef transformation;
    KnowledgeModelRef knowledge;
    CostSpec cost;
    DivergenceKind divergence_kind = DivergenceKind::kl();
    std::string name;
};

inline void validate_stage(const Stage& s) {
    if (!s.transformation || !s.knowledge) {
        throw ValidationError("incomplete-stage",
                              "stage '" + s.name + "' needs a transformation and a knowledge model");
    }
    if (s.knowledge->forward().get() != s.transformation.get()) {
        throw ValidationError("knowledge-forward-mismatch",
                              "stage '" + s.name + "': knowledge model '" + s.knowledge->name() +
                                  "' was built for transformation '" +
                                  s.knowledge->forward()->name() + "', not '" +
                                  s.transformation->name() + "'");
    }
    if (!(s.cost.amount >= 0.0)) {
        throw ValidationError("negative-cost", "stage '" + s.name + "' has a negative cost");
    }
}

/// Everything measured about one stage. `benefit` is -infinity when PD is
/// infinite. `ratio` is undefined (and NaN) exactly when the cost is zero.
/// `pd_vs_stage_input` is present only when PD was measured against an
/// explicit ground-truth reference; it then holds the default measurement
/// against the stage's realized input.
struct StageMeasures {
    std::string stage_name;
    double h_in = 0.0;
    double h_out = 0.0;
    double ac = 0.0;
    DivergenceResult pd;
    std::optional<DivergenceResult> pd_vs_stage_input;
    CostSpec cost;
    double benefit = 0.0;
    bool ratio_defined = false;
    double ratio = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline StageMeasures measure_stage_impl(const Pmf& p_in, const Stage& s,
                                        const Pmf* ground_truth) {
    validate_stage(s);
    if (!same_alphabet(p_in.alphabet(), s.transformation->input())) {
        throw AlphabetMismatchError("measure_stage: input pmf over '" +
                                    p_in.alphabet()->name() + "' does not match stage '" +
                                    s.name + "' input alphabet '" +
                                    s.transformation->input()->name() + "'");
    }
    if (ground_truth && !same_alphabet(ground_truth->alphabet(), s.transformation->input())) {
        throw AlphabetMismatchError("measure_stage: ground-truth pmf over '" +
                                    ground_truth->alphabet()->name() +
                                    "' does not match stage '" + s.name + "' input alphabet '" +
                                    s.transformation->input()->name() + "'");
    }

    StageMeasures m;
    m.stage_name = s.name;
    m.cost = s.cost;

    const Pmf p_out = pushforward(p_in, *s.transformation);
    const Pmf p_rec = reconstruct(p_out, *s.knowledge);

    m.h_in = entropy(p_in);
    m.h_out = entropy(p_out);
    m.ac = m.h_in - m.h_out;
    const DivergenceResult pd_default =
        potential_distortion(p_rec, p_in, s.divergence_kind);
    if (ground_truth) {
        m.pd = potential_distortion(p_rec, *ground_truth, s.divergence_kind);
        m.pd_vs_stage_input = pd_default;
    } else {
        m.pd = pd_default;
    }
    m.benefit = m.pd.is_infinite() ? -std::numeric_limits<double>::infinity()
                                   : m.ac - m.pd.bits;
    m.ratio_defined = s.cost.amount > 0.0;
    if (m.ratio_defined) {
        m.ratio = m.benefit / s.cost.amount;
    }
    return m;
}

} // namespace detail

/// Measure one stage with PD taken against the stage's own input.
inline StageMeasures measure_stage(const Pmf& p_in, const Stage& s) {
    return detail::measure_stage_impl(p_in, s, nullptr);
}

/// Measure one stage with PD taken against an explicit ground-truth
/// distribution on the stage's input alphabet; the default measurement
/// against the realized input is reported alongside.
inline StageMeasures measure_stage(const Pmf& p_in, const Stage& s, const Pmf& ground_truth) {
    return detail::measure_stage_impl(p_in, s, &ground_truth);
}

struct PipelineReport {
    std::vector<StageMeasures> stages;
    double cumulative_benefit = 0.0; // -infinity if any stage's benefit is
    CostSpec cumulative_cost;
    std::vector<double> entropy_trajectory; // |stages| + 1 entries
};

namespace detail {

inline PipelineReport measure_pipeline_impl(const Pmf& p0, const std::vector<Stage>& stages,
                                            const Pmf* ground_truth) {
    if (stages.empty()) {
        throw ValidationError("empty-pipeline", "a pipeline needs at least one stage");
    }
    for (const Stage& s : stages) validate_stage(s);
    const CostUnit unit = stages.front().cost.unit;
    for (const Stage& s : stages) {
        if (s.cost.unit != unit) {
            throw ValidationError("mixed-cost-units",
                                  "pipeline mixes cost units ('" + to_string(unit) + "' vs '" +
                                      to_string(s.cost.unit) + "' at stage '" + s.name + "')");
        }
    }
    for (std::size_t k = 0; k + 1 < stages.size(); ++k) {
        if (!same_alphabet(stages[k].transformation->output(),
                           stages[k + 1].transformation->input())) {
            throw AlphabetMismatchError(
                "measure_pipeline: stage '" + stages[k].name + "' outputs alphabet '" +
                stages[k].transformation->output()->name() + "' but stage '" +
                stages[k + 1].name + "' expects '" +
                stages[k + 1].transformation->input()->name() + "'");
        }
    }
    if (ground_truth && !same_alphabet(ground_truth->alphabet(), p0.alphabet())) {
        throw AlphabetMismatchError(
            "measure_pipeline: ground-truth pmf over '" + ground_truth->alphabet()->name() +
            "' does not match the pipeline input alphabet '" + p0.alphabet()->name() + "'");
    }

    PipelineReport report;
    report.entropy_trajectory.reserve(stages.size() + 1);
    report.entropy_trajectory.push_back(entropy(p0));

    Pmf current = p0;
    std::optional<Pmf> truth_current =
        ground_truth ? std::optional<Pmf>(*ground_truth) : std::nullopt;
    bool infinite = false;
    double benefit_sum = 0.0;
    double cost_sum = 0.0;
    bool includes_reconstruction = true;
    for (const Stage& s : stages) {
        StageMeasures m = truth_current ? measure_stage(current, s, *truth_current)
                                        : measure_stage(current, s);
        if (m.pd.is_infinite()) {
            infinite = true;
        } else {
            benefit_sum += m.benefit;
        }
        cost_sum += s.cost.amount;
        includes_reconstruction = includes_reconstruction && s.cost.includes_reconstruction;
        report.stages.push_back(std::move(m));

        current = pushforward(current, *s.transformation);
        report.entropy_trajectory.push_back(entropy(current));
        if (truth_current) {
            truth_current = pushforward(*truth_current, *s.transformation);
        }
    }
    report.cumulative_benefit =
        infinite ? -std::numeric_limits<double>::infinity() : benefit_sum;
    report.cumulative_cost = CostSpec{cost_sum, unit, includes_reconstruction};
    return report;
}

} // namespace detail

/// Measure a chain of stages, feeding each stage's pushforward onward.
/// Per-stage PD uses each stage's realized input as the reference.
inline PipelineReport measure_pipeline(const Pmf& p0, const std::vector<Stage>& stages) {
    return detail::measure_pipeline_impl(p0, stages, nullptr);
}

/// Ground-truth mode: the reference distribution starts as `ground_truth`
/// on the pipeline's input alphabet and is pushed forward alongside the
/// realized distribution; each stage's PD is measured against it, with the
/// default measurement reported alongside.
inline PipelineReport measure_pipeline(const Pmf& p0, const std::vector<Stage>& stages,
                                       const Pmf& ground_truth) {
    return detail::measure_pipeline_impl(p0, stages, &ground_truth);
}

/// Was extra information useful? It was if it changed the decision
/// distribution; when a ground truth is known, also report which side
/// ends up closer to it.
struct UsefulnessReport {
    DivergenceResult shift; // divergence of p_with from p_without
    bool changed = false;

    std::optional<DivergenceResult> with_vs_truth;
    std::optional<DivergenceResult> without_vs_truth;

    enum class Closer { With, Without, Tie };
    std::optional<Closer> closer;

    std::string verdict() const {
        if (!changed) {
            return "not useful: the extra information leaves the decision PMF unchanged";
        }
        if (!closer) {
            return "useful: the extra information changes the decision PMF";
        }
        switch (*closer) {
            case Closer::With:
                return "useful: the extra information moves the decision PMF closer to the "
                       "ground truth";
            case Closer::Without:
                return "counterproductive: the extra information moves the decision PMF away "
                       "from the ground truth";
            case Closer::Tie:
                return "inconclusive: both decision PMFs are equally far from the ground truth";
        }
        return "useful: the extra information changes the decision PMF";
    }
};

inline UsefulnessReport task_usefulness(const Pmf& p_with, const Pmf& p_without,
                                        const std::optional<Pmf>& q_truth,
                                        const DivergenceKind& kind) {
    require_same_alphabet(p_with, p_without, "task_usefulness");
    UsefulnessReport report;
    report.shift = divergence(kind, p_with, p_without);
    report.changed = report.shift.is_infinite() || report.shift.bits > 1e-9;
    if (q_truth) {
        require_same_alphabet(p_with, *q_truth, "task_usefulness");
        report.with_vs_truth = divergence(kind, p_with, *q_truth);
        report.without_vs_truth = divergence(kind, p_without, *q_truth);
        const double a = report.with_vs_truth->bits;
        const double b = report.without_vs_truth->bits;
        if (a == b || std::abs(a - b) <= 1e-12) {
            report.closer = UsefulnessReport::Closer::Tie;
        } else if (a < b) {
            report.closer = UsefulnessReport::Closer::With;
        } else {
            report.closer = UsefulnessReport::Closer::Without;
        }
    }
    return report;
}

/// Measure every candidate stage on the same input and rank by ratio,
/// descending. Undefined ratios (zero cost) rank last; ties break by
/// benefit, then by declaration order.
inline std::vector<StageMeasures> compare_processes(const Pmf& p_in,
                                                    const std::vector<Stage>& candidates) {
    if (candidates.empty()) {
        throw ValidationError("empty-comparison", "a comparison needs at least one candidate");
    }
    const CostUnit unit = candidates.front().cost.unit;
    for (const Stage& s : candidates) {
        validate_stage(s);
        if (!same_alphabet(s.transformation->input(), p_in.alphabet())) {
            throw AlphabetMismatchError("compare_processes: candidate '" + s.name +
                                        "' expects alphabet '" +
                                        s.transformation->input()->name() +
                                        "' but the input pmf is over '" +
                                        p_in.alphabet()->name() + "'");
        }
        if (s.cost.unit != unit) {
            throw ValidationError("mixed-cost-units",
                                  "comparison mixes cost units ('" + to_string(unit) + "' vs '" +
                                      to_string(s.cost.unit) + "' at candidate '" + s.name +
                                      "')");
        }
    }

    std::vector<StageMeasures> measures;
    measures.reserve(candidates.size());
    for (const Stage& s : candidates) {
        measures.push_back(measure_stage(p_in, s));
    }

    std::vector<std::size_t> order(measures.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const StageMeasures& ma = measures[a];
        const StageMeasures& mb = measures[b];
        if (ma.ratio_defined != mb.ratio_defined) return ma.ratio_defined;
        if (ma.ratio_defined && ma.ratio != mb.ratio) return ma.ratio > mb.ratio;
        if (ma.benefit != mb.benefit) return ma.benefit > mb.benefit;
        return false; // stable sort keeps declaration order
    });

    std::vector<StageMeasures> ranked;
    ranked.reserve(measures.size());
    for (std::size_t idx : order) {
        ranked.push_back(std::move(measures[idx]));
    }
    return ranked;
}

} // namespace cbr
