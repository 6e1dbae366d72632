#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pdv/automata/alphabet.hpp"

namespace pdv {

/// Distribution on Σ*: before each letter the word stops with probability
/// `stop_prob`, otherwise a letter is drawn from `letter_probs`.
///
///   P(a1...an) = p(a1) · ... · p(an) · (1 - stop_prob)^n · stop_prob
///
/// Word length is geometric with mean 1/stop_prob - 1.
class WordDistribution {
public:
    static constexpr double default_stop_prob = 0.05;
    static constexpr std::size_t default_max_len = 10'000;

    /// Uniform letters over an alphabet of the given size.
    static WordDistribution uniform(std::size_t alphabet_size, double stop_prob = default_stop_prob,
                                    std::size_t max_len = default_max_len);

    /// Throws input_error unless the letter probabilities are nonnegative and
    /// sum to 1 (within 1e-9) and 0 < stop_prob <= 1.
    WordDistribution(std::vector<double> letter_probs, double stop_prob, std::size_t max_len = default_max_len);

    const std::vector<double>& letter_probs() const noexcept { return letter_probs_; }
    double stop_prob() const noexcept { return stop_prob_; }
    /// Sampled words are truncated at this length.
    std::size_t max_len() const noexcept { return max_len_; }
    std::size_t alphabet_size() const noexcept { return letter_probs_.size(); }

    double expected_length() const noexcept { return 1.0 / stop_prob_ - 1.0; }

    /// Exact probability of w under the distribution (ignores truncation).
    double word_probability(const Word& w) const;

private:
    std::vector<double> letter_probs_;
    double stop_prob_;
    std::size_t max_len_;
};

/// Stream of words from a WordDistribution with its own generator state.
class WordSampler {
public:
    WordSampler(WordDistribution dist, std::uint64_t seed);

    Word operator()();

    std::uint64_t sampled() const noexcept { return sampled_; }
    std::uint64_t truncated() const noexcept { return truncated_; }
    const WordDistribution& distribution() const noexcept { return dist_; }

private:
    WordDistribution dist_;
    std::mt19937_64 rng_;
    std::bernoulli_distribution stop_;
    std::discrete_distribution<Letter> letter_;
    std::uint64_t sampled_ = 0;
    std::uint64_t truncated_ = 0;
};

/// Independent stream seed for worker `index` under `master`.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

} // namespace pdv
