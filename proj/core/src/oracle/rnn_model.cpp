#include "pdv/oracle/rnn_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pdv/errors.hpp"

namespace pdv {

using nlohmann::json;

const char* to_string(CellKind kind) { return kind == CellKind::lstm ? "lstm" : "elman"; }

namespace {

std::string shape(const Matrix& m) { return std::to_string(m.rows) + "x" + std::to_string(m.cols); }

void expect_shape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& field) {
    if (m.rows != rows || m.cols != cols || m.values.size() != rows * cols) {
        throw input_error("dimension mismatch in " + field + ": expected " + std::to_string(rows) + "x" +
                          std::to_string(cols) + ", got " + shape(m));
    }
}

void expect_finite(const std::vector<double>& values, const std::string& field) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw input_error("non-finite weight in " + field + " at index " + std::to_string(i));
        }
    }
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// pre[r] = bias[r] + w_in·x + w_rec·h, where x is one-hot (letter) or an
// embedding row.
void pre_activation(const RnnLayer& layer, const double* x, std::size_t x_len, std::optional<Letter> one_hot,
                    const std::vector<double>& h, std::vector<double>& pre) {
    const std::size_t rows = layer.w_in.rows;
    pre.assign(layer.bias.begin(), layer.bias.end());
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = pre[r];
        if (one_hot) {
            acc += layer.w_in(r, *one_hot);
        } else {
            const double* w = layer.w_in.values.data() + r * x_len;
            for (std::size_t c = 0; c < x_len; ++c) {
                acc += w[c] * x[c];
            }
        }
        const double* u = layer.w_rec.values.data() + r * h.size();
        for (std::size_t c = 0; c < h.size(); ++c) {
            acc += u[c] * h[c];
        }
        pre[r] = acc;
    }
}

void check_finite(const std::vector<double>& pre, std::size_t layer) {
    for (double v : pre) {
        if (!std::isfinite(v)) {
            throw numeric_error("non-finite pre-activation in layer " + std::to_string(layer));
        }
    }
}

} // namespace

void RnnModel::validate() const {
    if (alphabet.size() == 0) {
        throw input_error("model alphabet must not be empty");
    }
    if (layers.empty()) {
        throw input_error("model must have at least one layer");
    }
    if (h0.size() != layers.size()) {
        throw input_error("h0 has " + std::to_string(h0.size()) + " entries for " + std::to_string(layers.size()) +
                          " layers");
    }
    if (embedding) {
        if (embedding->rows != alphabet.size() || embedding->cols == 0 ||
            embedding->values.size() != embedding->rows * embedding->cols) {
            throw input_error("dimension mismatch in embedding: expected " + std::to_string(alphabet.size()) +
                              "xE, got " + shape(*embedding));
        }
        expect_finite(embedding->values, "embedding");
    }
    const std::size_t gates = cell == CellKind::lstm ? 4 : 1;
    std::size_t input = input_width();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const std::string name = "layers[" + std::to_string(l) + "]";
        const std::size_t hidden = h0[l].size();
        if (hidden == 0) {
            throw input_error("h0[" + std::to_string(l) + "] is empty (layer " + std::to_string(l) + ")");
        }
        expect_shape(layers[l].w_in, gates * hidden, input, name + ".w_in (layer " + std::to_string(l) + ")");
        expect_shape(layers[l].w_rec, gates * hidden, hidden, name + ".w_rec (layer " + std::to_string(l) + ")");
        if (layers[l].bias.size() != gates * hidden) {
            throw input_error("dimension mismatch in " + name + ".b (layer " + std::to_string(l) + "): expected " +
                              std::to_string(gates * hidden) + " entries, got " +
                              std::to_string(layers[l].bias.size()));
        }
        expect_finite(layers[l].w_in.values, name + ".w_in");
        expect_finite(layers[l].w_rec.values, name + ".w_rec");
        expect_finite(layers[l].bias, name + ".b");
        expect_finite(h0[l], "h0[" + std::to_string(l) + "]");
        input = hidden;
    }
    if (cell == CellKind::lstm && !c0.empty()) {
        if (c0.size() != layers.size()) {
            throw input_error("c0 has " + std::to_string(c0.size()) + " entries for " +
                              std::to_string(layers.size()) + " layers");
        }
        for (std::size_t l = 0; l < layers.size(); ++l) {
            if (c0[l].size() != h0[l].size()) {
                throw input_error("dimension mismatch in c0[" + std::to_string(l) + "]");
            }
            expect_finite(c0[l], "c0[" + std::to_string(l) + "]");
        }
    } else if (cell == CellKind::elman && !c0.empty()) {
        throw input_error("c0 is only valid for lstm cells");
    }
    if (readout.weights.size() != h0.back().size()) {
        throw input_error("dimension mismatch in readout.w: expected " + std::to_string(h0.back().size()) +
                          " entries, got " + std::to_string(readout.weights.size()));
    }
    expect_finite(readout.weights, "readout.w");
    if (!std::isfinite(readout.bias)) {
        throw input_error("non-finite weight in readout.b");
    }
    if (!(readout.threshold > 0.0 && readout.threshold < 1.0)) {
        throw input_error("readout.threshold must lie in (0, 1)");
    }
}

RnnState initial_state(const RnnModel& model) {
    RnnState s;
    s.h = model.h0;
    if (model.cell == CellKind::lstm) {
        if (model.c0.empty()) {
            for (const auto& h : model.h0) {
                s.c.emplace_back(h.size(), 0.0);
            }
        } else {
            s.c = model.c0;
        }
    }
    return s;
}

RnnState rnn_step(const RnnModel& model, const RnnState& state, Letter letter) {
    if (letter >= model.alphabet.size()) {
        throw input_error("letter index " + std::to_string(letter) + " outside model alphabet");
    }
    if (state.h.size() != model.layers.size() ||
        (model.cell == CellKind::lstm && state.c.size() != model.layers.size())) {
        throw input_error("hidden state does not match model layer count");
    }

    RnnState next;
    next.h.resize(model.layers.size());
    if (model.cell == CellKind::lstm) {
        next.c.resize(model.layers.size());
    }

    std::vector<double> pre;
    const double* x = nullptr;
    std::size_t x_len = 0;
    std::optional<Letter> one_hot;
    if (model.embedding) {
        x = model.embedding->values.data() + letter * model.embedding->cols;
        x_len = model.embedding->cols;
    } else {
        one_hot = letter;
    }

    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        const RnnLayer& layer = model.layers[l];
        const std::vector<double>& h = state.h[l];
        const std::size_t hidden = model.hidden_size(l);
        if (h.size() != hidden) {
            throw input_error("hidden state of layer " + std::to_string(l) + " has wrong size");
        }
        pre_activation(layer, x, x_len, l == 0 ? one_hot : std::nullopt, h, pre);
        check_finite(pre, l);

        std::vector<double>& out = next.h[l];
        out.resize(hidden);
        if (model.cell == CellKind::elman) {
            for (std::size_t i = 0; i < hidden; ++i) {
                out[i] = std::tanh(pre[i]);
            }
        } else {
            const std::vector<double>& c = state.c[l];
            std::vector<double>& c_out = next.c[l];
            c_out.resize(hidden);
            for (std::size_t i = 0; i < hidden; ++i) {
                double in_gate = sigmoid(pre[i]);
                double forget = sigmoid(pre[hidden + i]);
                double candidate = std::tanh(pre[2 * hidden + i]);
                double out_gate = sigmoid(pre[3 * hidden + i]);
                c_out[i] = forget * c[i] + in_gate * candidate;
                out[i] = out_gate * std::tanh(c_out[i]);
            }
        }
        x = out.data();
        x_len = hidden;
    }
    return next;
}

double rnn_logit(const RnnModel& model, const RnnState& state) {
    const auto& h = state.h.back();
    double acc = model.readout.bias;
    for (std::size_t i = 0; i < h.size(); ++i) {
        acc += model.readout.weights[i] * h[i];
    }
    return acc;
}

bool rnn_accepts(const RnnModel& model, const RnnState& state) {
    double t = model.readout.threshold;
    double cut = t == 0.5 ? 0.0 : std::log(t / (1.0 - t));
    return rnn_logit(model, state) >= cut;
}

RnnState rnn_run(const RnnModel& model, const Word& w) {
    RnnState s = initial_state(model);
    for (Letter a : w) {
        s = rnn_step(model, s, a);
    }
    return s;
}

bool rnn_classify(const RnnModel& model, const Word& w) { return rnn_accepts(model, rnn_run(model, w)); }

// ---------------------------------------------------------------------------
// rnn v1 JSON

namespace {

std::vector<double> read_vector(const json& j, const std::string& field) {
    if (!j.is_array()) {
        throw input_error("field " + field + " must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw input_error("field " + field + "[" + std::to_string(i) + "] is not a number");
        }
        out.push_back(j[i].get<double>());
    }
    return out;
}

Matrix read_matrix(const json& j, const std::string& field) {
    if (!j.is_array()) {
        throw input_error("field " + field + " must be a matrix (array of rows)");
    }
    Matrix m;
    m.rows = j.size();
    for (std::size_t r = 0; r < j.size(); ++r) {
        auto row = read_vector(j[r], field + "[" + std::to_string(r) + "]");
        if (r == 0) {
            m.cols = row.size();
        } else if (row.size() != m.cols) {
            throw input_error("dimension mismatch in " + field + ": ragged rows");
        }
        m.values.insert(m.values.end(), row.begin(), row.end());
    }
    return m;
}

const json& require(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw input_error("missing field " + where + key);
    }
    return *it;
}

json write_matrix(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        rows.push_back(std::vector<double>(m.values.begin() + static_cast<std::ptrdiff_t>(r * m.cols),
                                           m.values.begin() + static_cast<std::ptrdiff_t>((r + 1) * m.cols)));
    }
    return rows;
}

} // namespace

RnnModel parse_rnn_model(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("malformed model JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw input_error("model file must contain a JSON object");
    }
    const json& format = require(j, "format", "");
    if (!format.is_string() || format.get<std::string>() != "rnn v1") {
        throw input_error("field format must be \"rnn v1\"");
    }

    RnnModel m;
    const json& cell = require(j, "cell", "");
    if (cell == "elman") {
        m.cell = CellKind::elman;
    } else if (cell == "lstm") {
        m.cell = CellKind::lstm;
    } else {
        throw input_error("field cell must be \"elman\" or \"lstm\"");
    }

    const json& alphabet = require(j, "alphabet", "");
    if (!alphabet.is_array()) {
        throw input_error("field alphabet must be an array of strings");
    }
    std::vector<std::string> symbols;
    for (const auto& s : alphabet) {
        if (!s.is_string()) {
            throw input_error("field alphabet must be an array of strings");
        }
        symbols.push_back(s.get<std::string>());
    }
    m.alphabet = Alphabet(std::move(symbols));

    const json& layers = require(j, "layers", "");
    if (!layers.is_array()) {
        throw input_error("field layers must be an array");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        std::string where = "layers[" + std::to_string(l) + "].";
        RnnLayer layer;
        layer.w_in = read_matrix(require(layers[l], "w_in", where), where + "w_in");
        layer.w_rec = read_matrix(require(layers[l], "w_rec", where), where + "w_rec");
        layer.bias = read_vector(require(layers[l], "b", where), where + "b");
        m.layers.push_back(std::move(layer));
    }

    const json& h0 = require(j, "h0", "");
    if (!h0.is_array()) {
        throw input_error("field h0 must be an array of vectors");
    }
    for (std::size_t l = 0; l < h0.size(); ++l) {
        m.h0.push_back(read_vector(h0[l], "h0[" + std::to_string(l) + "]"));
    }
    if (auto it = j.find("c0"); it != j.end() && !it->is_null()) {
        for (std::size_t l = 0; l < it->size(); ++l) {
            m.c0.push_back(read_vector((*it)[l], "c0[" + std::to_string(l) + "]"));
        }
    }

    const json& readout = require(j, "readout", "");
    m.readout.weights = read_vector(require(readout, "w", "readout."), "readout.w");
    const json& rb = require(readout, "b", "readout.");
    if (!rb.is_number()) {
        throw input_error("field readout.b must be a number");
    }
    m.readout.bias = rb.get<double>();
    if (auto it = readout.find("threshold"); it != readout.end()) {
        if (!it->is_number()) {
            throw input_error("field readout.threshold must be a number");
        }
        m.readout.threshold = it->get<double>();
    }

    if (auto it = j.find("embedding"); it != j.end() && !it->is_null()) {
        m.embedding = read_matrix(*it, "embedding");
    }

    m.validate();
    return m;
}

std::string format_rnn_model(const RnnModel& model) {
    json j;
    j["format"] = "rnn v1";
    j["cell"] = to_string(model.cell);
    j["alphabet"] = model.alphabet.symbols();
    json layers = json::array();
    for (const auto& layer : model.layers) {
        layers.push_back({{"w_in", write_matrix(layer.w_in)}, {"w_rec", write_matrix(layer.w_rec)}, {"b", layer.bias}});
    }
    j["layers"] = std::move(layers);
    j["h0"] = model.h0;
    if (!model.c0.empty()) {
        j["c0"] = model.c0;
    }
    j["readout"] = {{"w", model.readout.weights}, {"b", model.readout.bias}, {"threshold", model.readout.threshold}};
    if (model.embedding) {
        j["embedding"] = write_matrix(*model.embedding);
    }
    // nlohmann serializes doubles with round-trip precision
    return j.dump() + "\n";
}

RnnModel load_rnn_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot open model file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_rnn_model(buf.str());
    } catch (const input_error& e) {
        throw input_error(path.string() + ": " + e.what());
    }
}

void save_rnn_model(const RnnModel& model, const std::filesystem::path& path) {
    model.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw input_error("cannot write model file " + path.string());
    }
    out << format_rnn_model(model);
}

// ---------------------------------------------------------------------------
// RnnOracle

RnnOracle::RnnOracle(RnnModel model, std::size_t max_cached_values)
    : LanguageOracle(model.alphabet), model_(std::move(model)) {
    model_.validate();
    values_per_node_ = 0;
    for (const auto& h : model_.h0) {
        values_per_node_ += h.size() * (model_.cell == CellKind::lstm ? 2 : 1);
    }
    max_nodes_ = std::max<std::size_t>(2, max_cached_values / std::max<std::size_t>(1, values_per_node_));
    reset_cache();
}

void RnnOracle::reset_cache() {
    nodes_.clear();
    RnnState s = initial_state(model_);
    bool acc = rnn_accepts(model_, s);
    nodes_.push_back(Node{std::move(s), acc, std::vector<std::uint32_t>(model_.alphabet.size(), 0)});
}

std::string RnnOracle::describe() const {
    return std::string("rnn(") + to_string(model_.cell) + ", " + std::to_string(model_.layers.size()) + " layers)";
}

std::size_t RnnOracle::cached_prefixes() const {
    std::lock_guard lock(mutex_);
    return nodes_.size();
}

bool RnnOracle::evaluate(const Word& w) {
    std::lock_guard lock(mutex_);
    if (w.size() >= max_nodes_) {
        return rnn_classify(model_, w);
    }
    if (nodes_.size() + w.size() > max_nodes_) {
        reset_cache();
    }
    std::uint32_t cur = 0;
    for (Letter a : w) {
        std::uint32_t child = nodes_[cur].children[a];
        if (child == 0) {
            RnnState s = rnn_step(model_, nodes_[cur].state, a);
            bool acc = rnn_accepts(model_, s);
            child = static_cast<std::uint32_t>(nodes_.size());
            nodes_.push_back(Node{std::move(s), acc, std::vector<std::uint32_t>(model_.alphabet.size(), 0)});
            nodes_[cur].children[a] = child;
        }
        cur = child;
    }
    return nodes_[cur].accepts;
}

} // namespace pdv
