#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdv/automata/alphabet.hpp"
#include "pdv/oracle/language_oracle.hpp"

namespace pdv {

enum class CellKind { elman, lstm };

const char* to_string(CellKind kind);

/// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// One recurrent layer. For LSTM cells the gate blocks are stacked in the
/// order input, forget, candidate, output, so `w_in` is 4H x I, `w_rec` is
/// 4H x H and `bias` has 4H entries.
struct RnnLayer {
    Matrix w_in;
    Matrix w_rec;
    std::vector<double> bias;

    friend bool operator==(const RnnLayer&, const RnnLayer&) = default;
};

/// Linear head on the last layer's hidden state. A word is accepted when
/// sigmoid(weights · h + bias) >= threshold.
struct Readout {
    std::vector<double> weights;
    double bias = 0.0;
    double threshold = 0.5;

    friend bool operator==(const Readout&, const Readout&) = default;
};

/// Portable weights of a recurrent binary classifier over an alphabet.
///
/// Inputs are one-hot letters, or rows of `embedding` (|Σ| x E) when present.
struct RnnModel {
    CellKind cell = CellKind::elman;
    Alphabet alphabet;
    std::vector<RnnLayer> layers;
    std::vector<std::vector<double>> h0;
    /// LSTM cell state at the start; empty means zeros.
    std::vector<std::vector<double>> c0;
    Readout readout;
    std::optional<Matrix> embedding;

    std::size_t hidden_size(std::size_t layer) const { return h0.at(layer).size(); }
    std::size_t input_width() const { return embedding ? embedding->cols : alphabet.size(); }

    /// Throws input_error naming the first inconsistent or non-finite field.
    void validate() const;

    friend bool operator==(const RnnModel&, const RnnModel&) = default;
};

/// Hidden (and, for LSTM, cell) state of every layer.
struct RnnState {
    std::vector<std::vector<double>> h;
    std::vector<std::vector<double>> c;

    friend bool operator==(const RnnState&, const RnnState&) = default;
};

RnnState initial_state(const RnnModel& model);

/// One transition of the network. Throws numeric_error if a pre-activation
/// is not finite.
RnnState rnn_step(const RnnModel& model, const RnnState& state, Letter letter);

/// Readout logit of a state; acceptance compares it against the logit of
/// the threshold, which is exactly 0 for the default threshold 1/2.
double rnn_logit(const RnnModel& model, const RnnState& state);
bool rnn_accepts(const RnnModel& model, const RnnState& state);

RnnState rnn_run(const RnnModel& model, const Word& w);
bool rnn_classify(const RnnModel& model, const Word& w);

// `rnn v1` JSON model files.
RnnModel parse_rnn_model(std::string_view json_text);
std::string format_rnn_model(const RnnModel& model);
RnnModel load_rnn_model(const std::filesystem::path& path);
void save_rnn_model(const RnnModel& model, const std::filesystem::path& path);

/// Membership through RNN inference, caching the hidden state of every
/// queried prefix in a trie so that prefix-structured query batches (L*
/// tables) cost one step per new letter. The cache never changes answers.
class RnnOracle final : public LanguageOracle {
public:
    explicit RnnOracle(RnnModel model, std::size_t max_cached_values = std::size_t{1} << 24);

    const RnnModel& model() const noexcept { return model_; }
    std::string describe() const override;

    std::size_t cached_prefixes() const;

protected:
    bool evaluate(const Word& w) override;

private:
    struct Node {
        RnnState state;
        bool accepts;
        std::vector<std::uint32_t> children; // 0 = absent (root is never a child)
    };

    void reset_cache();

    RnnModel model_;
    std::size_t values_per_node_;
    std::size_t max_nodes_;
    std::vector<Node> nodes_;
    mutable std::mutex mutex_;
};

} // namespace pdv
