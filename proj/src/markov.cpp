#include "puzzletext/markov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "puzzletext/rng.hpp"

namespace puzzletext::markov {
namespace {

constexpr std::string_view kStopSequence = "<|endoftext|>";
constexpr std::string_view kMagic = "puzzletext-markov 1";

std::string to_hex(std::string_view bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out += digits[c >> 4];
        out += digits[c & 15];
    }
    return out;
}

std::string from_hex(std::string_view hex) {
    if (hex.size() % 2) throw MarkovError(MarkovErrc::Format, "odd-length hex field");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw MarkovError(MarkovErrc::Format, "bad hex digit");
    };
    std::string out;
    for (std::size_t i = 0; i < hex.size(); i += 2)
        out += static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1]));
    return out;
}

[[noreturn]] void format_error(const std::string& what) {
    throw MarkovError(MarkovErrc::Format, "model file: " + what);
}

std::string sorted_alphabet(std::string_view text) {
    std::array<bool, 256> seen{};
    for (unsigned char c : text) seen[c] = true;
    std::string out;
    for (int c = 0; c < 256; ++c)
        if (seen[c]) out += static_cast<char>(c);
    return out;
}

}  // namespace

CharMarkovModel::CharMarkovModel(int order, double alpha, std::string alphabet)
    : order_(order), alpha_(alpha), alphabet_(sorted_alphabet(alphabet)) {
    if (order < 0) throw MarkovError(MarkovErrc::BadParameter, "order must be >= 0");
    if (!(alpha > 0.0)) throw MarkovError(MarkovErrc::BadParameter, "alpha must be > 0");
    if (alphabet_.empty()) throw MarkovError(MarkovErrc::EmptyCorpus, "empty alphabet");
    unigram_.assign(alphabet_.size(), 0);
}

int CharMarkovModel::symbol(char c) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), c,
                               [](char a, char b) {
                                   return static_cast<unsigned char>(a) < static_cast<unsigned char>(b);
                               });
    if (it == alphabet_.end() || *it != c) return -1;
    return static_cast<int>(it - alphabet_.begin());
}

std::vector<double> CharMarkovModel::smoothed(const std::vector<std::uint64_t>& counts) const {
    std::uint64_t total = 0;
    for (auto n : counts) total += n;
    const double denom = static_cast<double>(total) + alpha_ * static_cast<double>(alphabet_.size());
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) p[i] = (static_cast<double>(counts[i]) + alpha_) / denom;
    return p;
}

bool CharMarkovModel::knows(std::string_view context) const {
    return contexts_.count(std::string(context)) > 0;
}

std::vector<double> CharMarkovModel::distribution(std::string_view context) const {
    if (static_cast<int>(context.size()) >= order_) {
        auto it = contexts_.find(std::string(context.substr(context.size() - order_)));
        if (it != contexts_.end()) return smoothed(it->second);
    }
    return smoothed(unigram_);
}

double CharMarkovModel::probability(std::string_view context, char next) const {
    int s = symbol(next);
    if (s < 0) return 0.0;
    return distribution(context)[s];
}

CharMarkovModel train(std::string_view corpus, int order, double alpha) {
    if (corpus.empty()) throw MarkovError(MarkovErrc::EmptyCorpus, "training corpus is empty");
    CharMarkovModel m(order, alpha, std::string(corpus));
    const std::size_t k = static_cast<std::size_t>(order);
    std::vector<int> symbols(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) symbols[i] = m.symbol(corpus[i]);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        ++m.unigram_[symbols[i]];
        if (i < k) continue;
        auto& counts = m.contexts_[std::string(corpus.substr(i - k, k))];
        if (counts.empty()) counts.assign(m.alphabet_.size(), 0);
        ++counts[symbols[i]];
    }
    return m;
}

std::string sample(const CharMarkovModel& m, std::string_view prompt, int max_chars,
                   std::uint64_t seed, double temperature) {
    if (max_chars < 1) throw MarkovError(MarkovErrc::BadParameter, "max_chars must be >= 1");
    if (temperature < 0.0) throw MarkovError(MarkovErrc::BadParameter, "temperature must be >= 0");
    Rng rng(seed);
    std::string out(prompt);
    const std::string& alphabet = m.alphabet();
    std::vector<double> weights(alphabet.size());
    for (int n = 0; n < max_chars; ++n) {
        std::vector<double> p = m.distribution(out);
        std::size_t pick = 0;
        if (temperature == 0.0) {
            pick = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
        } else {
            double top = -INFINITY;
            for (std::size_t i = 0; i < p.size(); ++i) {
                weights[i] = std::log(p[i]) / temperature;
                top = std::max(top, weights[i]);
            }
            double total = 0.0;
            for (auto& w : weights) total += (w = std::exp(w - top));
            double u = rng.uniform() * total;
            pick = weights.size() - 1;
            for (std::size_t i = 0; i < weights.size(); ++i) {
                if (u < weights[i]) {
                    pick = i;
                    break;
                }
                u -= weights[i];
            }
        }
        out += alphabet[pick];
        if (std::string_view(out).ends_with(kStopSequence)) break;
    }
    return out;
}

double cross_entropy(const CharMarkovModel& m, std::string_view text) {
    const std::size_t k = static_cast<std::size_t>(m.order());
    if (text.size() <= k)
        throw MarkovError(MarkovErrc::TextTooShort, "text must be longer than the model order");
    double bits = 0.0;
    for (std::size_t i = k; i < text.size(); ++i) {
        double p = m.probability(text.substr(i - k, k), text[i]);
        if (p <= 0.0)
            throw MarkovError(MarkovErrc::UnknownSymbol,
                              "byte at position " + std::to_string(i) + " is not in the alphabet",
                              static_cast<long>(i));
        bits -= std::log2(p);
    }
    return bits / static_cast<double>(text.size() - k);
}

std::string CharMarkovModel::save() const {
    std::ostringstream out;
    char alpha_text[40];
    std::snprintf(alpha_text, sizeof alpha_text, "%.17g", alpha_);
    out << kMagic << "\norder " << order_ << "\nalpha " << alpha_text << "\nalphabet "
        << to_hex(alphabet_) << "\nunigram";
    for (auto n : unigram_) out << ' ' << n;
    out << "\ncontexts " << contexts_.size() << '\n';
    std::map<std::string, const std::vector<std::uint64_t>*> ordered;
    for (const auto& [ctx, counts] : contexts_) ordered.emplace(ctx, &counts);
    for (const auto& [ctx, counts] : ordered) {
        out << (ctx.empty() ? "-" : to_hex(ctx));
        for (auto n : *counts) out << ' ' << n;
        out << '\n';
    }
    return out.str();
}

CharMarkovModel CharMarkovModel::load(std::string_view text) {
    std::istringstream in{std::string(text)};
    auto fail = format_error;
    std::string line, key;
    if (!std::getline(in, line) || line != kMagic) fail("unrecognized header");

    int order = 0;
    std::string alpha_text, alphabet_hex;
    if (!(in >> key >> order) || key != "order") fail("missing order");
    if (!(in >> key >> alpha_text) || key != "alpha") fail("missing alpha");
    if (!(in >> key >> alphabet_hex) || key != "alphabet") fail("missing alphabet");
    double alpha = std::strtod(alpha_text.c_str(), nullptr);

    CharMarkovModel m(order, alpha, from_hex(alphabet_hex));
    if (m.alphabet_ != from_hex(alphabet_hex)) fail("alphabet is not sorted and distinct");
    if (!(in >> key) || key != "unigram") fail("missing unigram counts");
    for (auto& n : m.unigram_)
        if (!(in >> n)) fail("truncated unigram counts");

    std::size_t contexts = 0;
    if (!(in >> key >> contexts) || key != "contexts") fail("missing context count");
    for (std::size_t c = 0; c < contexts; ++c) {
        std::string ctx_hex;
        if (!(in >> ctx_hex)) fail("truncated contexts");
        std::string ctx = ctx_hex == "-" ? std::string() : from_hex(ctx_hex);
        if (static_cast<int>(ctx.size()) != order) fail("context length differs from order");
        std::vector<std::uint64_t> counts(m.alphabet_.size());
        for (auto& n : counts)
            if (!(in >> n)) fail("truncated context counts");
        m.contexts_.emplace(std::move(ctx), std::move(counts));
    }
    return m;
}

}  // namespace puzzletext::markov
