#pragma once

// Alphabets: ordered finite sets of distinct letters. A letter is one
// possible data state (a dataset, a value, a decision); an alphabet is the
// space of all of them. Alphabets are shared by reference and compared by
// identity: a probability assignment or a transformation is bound to one
// alphabet *object*, not to anything structurally equal to it.

#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cbratio/errors.hpp"

namespace cbr {

/// One element of an alphabet. `id` equals the letter's position in the
/// alphabet's order; `label` is the human-readable text used in reports.
struct Letter {
    std::size_t id = 0;
    std::string label;
};

class Alphabet;
using AlphabetRef = std::shared_ptr<const Alphabet>;

class Alphabet {
public:
    /// Labels must be non-empty and pairwise distinct; letter ids are
    /// assigned 0..n-1 in the given order. Iteration order is the
    /// construction order, stable across runs.
    static AlphabetRef create(std::string name, std::vector<std::string> labels) {
        if (labels.empty()) {
            throw ValidationError("empty-alphabet",
                                  "alphabet '" + name + "' needs at least one letter");
        }
        std::unordered_set<std::string_view> seen;
        seen.reserve(labels.size());
        for (const auto& label : labels) {
            if (label.empty()) {
                throw ValidationError("empty-label",
                                      "alphabet '" + name + "' has an empty letter label");
            }
            if (!seen.insert(label).second) {
                throw ValidationError("duplicate-label", "alphabet '" + name +
                                                             "' repeats label '" + label + "'");
            }
        }
        std::vector<Letter> letters;
        letters.reserve(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            letters.push_back(Letter{i, std::move(labels[i])});
        }
        return AlphabetRef(new Alphabet(std::move(name), std::move(letters)));
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return letters_.size(); }
    const std::vector<Letter>& letters() const noexcept { return letters_; }

    const Letter& letter(std::size_t id) const {
        if (id >= letters_.size()) {
            throw ValidationError("unknown-letter", "alphabet '" + name_ + "' has no letter id " +
                                                        std::to_string(id));
        }
        return letters_[id];
    }

    /// True when `l` names a letter of this alphabet (id and label both match).
    bool contains(const Letter& l) const noexcept {
        return l.id < letters_.size() && letters_[l.id].label == l.label;
    }

    Alphabet(const Alphabet&) = delete;
    Alphabet& operator=(const Alphabet&) = delete;

private:
    Alphabet(std::string name, std::vector<Letter> letters)
        : name_(std::move(name)), letters_(std::move(letters)) {}

    std::string name_;
    std::vector<Letter> letters_;
};

/// Identity comparison: the only notion of alphabet equality in this library.
inline bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b) noexcept {
    return a.get() == b.get();
}

} // namespace cbr
