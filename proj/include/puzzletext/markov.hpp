#pragma once

// Character-level order-k Markov model with additive smoothing: the
// desk-scale stand-in for a fine-tuned language model.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "puzzletext/error.hpp"

namespace puzzletext::markov {

enum class MarkovErrc { EmptyCorpus, TextTooShort, UnknownSymbol, BadParameter, Format };

using MarkovError = CodedError<MarkovErrc>;

inline constexpr int kDefaultOrder = 6;
inline constexpr double kDefaultAlpha = 0.1;
inline constexpr double kDefaultTemperature = 1.0;
inline constexpr int kDefaultMaxChars = 1024;

class CharMarkovModel {
public:
    // Model with an alphabet but no observations: every conditional is
    // uniform over the alphabet.
    CharMarkovModel(int order, double alpha, std::string alphabet);

    int order() const { return order_; }
    double alpha() const { return alpha_; }
    // Sorted, distinct bytes.
    const std::string& alphabet() const { return alphabet_; }
    std::size_t context_count() const { return contexts_.size(); }

    // P(next | context) over the alphabet, in alphabet order. Contexts never
    // seen in training (or shorter than the order) back off to the smoothed
    // unigram distribution.
    std::vector<double> distribution(std::string_view context) const;
    double probability(std::string_view context, char next) const;

    // Whether `context` (exactly order() bytes) was observed in training.
    bool knows(std::string_view context) const;

    std::string save() const;
    static CharMarkovModel load(std::string_view text);

    friend bool operator==(const CharMarkovModel&, const CharMarkovModel&) = default;

private:
    friend CharMarkovModel train(std::string_view, int, double);

    int symbol(char c) const;
    std::vector<double> smoothed(const std::vector<std::uint64_t>& counts) const;

    int order_;
    double alpha_;
    std::string alphabet_;
    std::vector<std::uint64_t> unigram_;
    std::unordered_map<std::string, std::vector<std::uint64_t>> contexts_;
};

// Counts every window of order+1 bytes. Throws EmptyCorpus on empty text.
CharMarkovModel train(std::string_view corpus, int order = kDefaultOrder,
                      double alpha = kDefaultAlpha);

// Returns prompt plus at most max_chars sampled bytes, stopping right after
// the model emits <|endoftext|>. A temperature of 0 picks the most likely
// byte (lowest byte on ties).
std::string sample(const CharMarkovModel& m, std::string_view prompt,
                   int max_chars = kDefaultMaxChars, std::uint64_t seed = 0,
                   double temperature = kDefaultTemperature);

// Mean -log2 P(text[i] | text[i-order..i)) over i in [order, size).
double cross_entropy(const CharMarkovModel& m, std::string_view text);

}  // namespace puzzletext::markov
