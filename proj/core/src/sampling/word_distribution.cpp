#include "pdv/sampling/word_distribution.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "pdv/errors.hpp"

namespace pdv {

WordDistribution WordDistribution::uniform(std::size_t alphabet_size, double stop_prob, std::size_t max_len) {
    if (alphabet_size == 0) {
        throw input_error("word distribution needs a nonempty alphabet");
    }
    return WordDistribution(std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)),
                            stop_prob, max_len);
}

WordDistribution::WordDistribution(std::vector<double> letter_probs, double stop_prob, std::size_t max_len)
    : letter_probs_(std::move(letter_probs)), stop_prob_(stop_prob), max_len_(max_len) {
    if (letter_probs_.empty()) {
        throw input_error("letter distribution must not be empty");
    }
    for (double p : letter_probs_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw input_error("letter probabilities must be finite and nonnegative");
        }
    }
    double total = std::accumulate(letter_probs_.begin(), letter_probs_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw input_error("letter probabilities sum to " + std::to_string(total) + ", expected 1");
    }
    if (!(stop_prob_ > 0.0 && stop_prob_ <= 1.0)) {
        throw input_error("stop probability must lie in (0, 1]");
    }
    if (max_len_ == 0) {
        throw input_error("maximum sampled length must be positive");
    }
}

double WordDistribution::word_probability(const Word& w) const {
    double p = stop_prob_;
    for (Letter a : w) {
        if (a >= letter_probs_.size()) {
            throw input_error("letter index " + std::to_string(a) + " outside distribution support");
        }
        p *= letter_probs_[a] * (1.0 - stop_prob_);
    }
    return p;
}

WordSampler::WordSampler(WordDistribution dist, std::uint64_t seed)
    : dist_(std::move(dist)), rng_(seed), stop_(dist_.stop_prob()),
      letter_(dist_.letter_probs().begin(), dist_.letter_probs().end()) {}

Word WordSampler::operator()() {
    Word w;
    ++sampled_;
    while (!stop_(rng_)) {
        if (w.size() == dist_.max_len()) {
            ++truncated_;
            break;
        }
        w.push_back(letter_(rng_));
    }
    return w;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 finalizer over a golden-ratio stride
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace pdv
