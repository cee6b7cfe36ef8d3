#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "sail/common.hpp"

namespace sail::nn {

// Flat row-major tensor. Everything runs in double precision; the networks
// here are tiny, so precision is cheap and finite-difference checks stay tight.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> v;

    Tensor() = default;
    Tensor(std::initializer_list<std::size_t> s);
    explicit Tensor(std::vector<std::size_t> s);

    static Tensor zeros(std::vector<std::size_t> s) { return Tensor(std::move(s)); }
    static Tensor from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return v.size(); }
    std::size_t rows() const { return shape.at(0); }
    std::size_t cols() const { return shape.at(1); }

    double& at(std::size_t r, std::size_t c) { return v[r * cols() + c]; }
    double at(std::size_t r, std::size_t c) const { return v[r * cols() + c]; }

    void fill(double x);
    bool same_shape(const Tensor& o) const { return shape == o.shape; }
};

// Trainable tensor with its gradient accumulator.
struct Param {
    std::string name;
    Tensor value;
    Tensor grad;
    bool trainable = true;

    Param() = default;
    Param(std::string n, Tensor init);

    void zero_grad() { grad.fill(0.0); }
};

Tensor uniform_init(std::vector<std::size_t> shape, double bound, Rng& rng);

// Numerically stable softmax of a plain vector (max-subtraction).
std::vector<double> softmax(const std::vector<double>& logits);

// Draw an index from an unnormalised-logit distribution via softmax weights.
int sample_index(const std::vector<double>& logits, Rng& rng);
int argmax_index(const std::vector<double>& logits);

// Dynamic reverse-mode tape. Nodes are created in evaluation order, so the
// reverse of creation order is a valid topological order for backprop.
class Tape {
public:
    int leaf(Tensor t);
    int param(Param& p);

    int matmul(int a, int b);                 // [m,k] x [k,n]
    int add(int a, int b);                    // same shape
    int sub(int a, int b);
    int mul(int a, int b);                    // elementwise
    int add_row(int a, int bias);             // [m,n] + [n] broadcast over rows
    int scale(int a, double c);
    int neg(int a) { return scale(a, -1.0); }

    int relu(int a);
    int sigmoid(int a);
    int tanh_(int a);
    int softplus(int a);

    int concat_cols(int a, int b);
    int softmax_rows(int a);

    int layer_norm(int x, int gain, int shift, double eps);

    // Single-head attention over the feature axis with a residual connection:
    // y = x + gamma * softmax(q k^T) v, per sample.
    int attention(int x, int wq, int wk, int wv, int gamma);

    // One stacked-LSTM layer over a [T*B, F] sequence (row t*B + b), gate
    // order (input, forget, cell, output). Returns the full hidden sequence
    // [T*B, H]. w_ih is [4H, F], w_hh [4H, H], bias [4H].
    int lstm(int x, int w_ih, int w_hh, int bias,
             std::size_t seq_len, std::size_t batch, std::size_t hidden);

    int last_rows(int x, std::size_t count);  // final `count` rows

    // Inverted dropout: evaluation mode is the identity.
    int dropout(int a, double rate, Rng& rng, bool training);

    int mean_all(int a);                      // scalar [1]

    // Mean negative log-softmax of the target class. Targets are constants.
    int cross_entropy(int logits, const std::vector<int>& targets);

    // Mean squared error against a constant target of identical shape.
    int mse(int pred, const Tensor& target);

    const Tensor& value(int id) const { return nodes_[id].value; }
    const Tensor& grad(int id) const { return nodes_[id].grad; }

    // Seeds d(loss)/d(loss) = 1 and walks the tape backwards; gradients of
    // param nodes are added into Param::grad.
    void backward(int loss_id);

private:
    struct Node {
        Tensor value;
        Tensor grad;
        Param* source = nullptr;
        std::function<void()> back;
    };

    int push(Tensor value, std::function<void()> back = nullptr, Param* src = nullptr);

    std::vector<Node> nodes_;
};

// Layer modules owning their parameters.

struct Dense {
    Param w, b;

    Dense() = default;
    Dense(std::size_t in, std::size_t out, Rng& rng, const std::string& name);
    int forward(Tape& t, int x) const;
    std::vector<Param*> params();
};

struct SelfAttention {
    Param wq, wk, wv, gamma;  // gamma starts at 0 so the block is initially identity

    SelfAttention() = default;
    SelfAttention(std::size_t features, Rng& rng, const std::string& name);
    int forward(Tape& t, int x) const;
    std::vector<Param*> params();
};

struct LayerNorm {
    Param gain, shift;
    double eps = 1e-5;

    LayerNorm() = default;
    LayerNorm(std::size_t features, const std::string& name);
    int forward(Tape& t, int x) const;
    std::vector<Param*> params();
};

struct LstmLayer {
    Param w_ih, w_hh, bias;
    std::size_t in = 0, hidden = 0;

    LstmLayer() = default;
    LstmLayer(std::size_t in_dim, std::size_t hidden_dim, Rng& rng, const std::string& name);
    int forward(Tape& t, int x, std::size_t seq_len, std::size_t batch) const;
    std::vector<Param*> params();
};

// Adaptive-moment optimizer with bias correction.
class Adam {
public:
    explicit Adam(double lr = 1e-3, double beta1 = 0.9, double beta2 = 0.999,
                  double eps = 1e-8)
        : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

    void step(const std::vector<Param*>& params);
    long step_count() const { return t_; }

private:
    struct Slot {
        Tensor m, v;
    };

    double lr_, beta1_, beta2_, eps_;
    long t_ = 0;
    std::vector<Slot> slots_;
};

void zero_grads(const std::vector<Param*>& params);

// Versioned JSON parameter format; doubles round-trip bit-exactly.
std::string params_to_json(const std::vector<Param*>& params);
void params_from_json(const std::string& text, const std::vector<Param*>& params);

}  // namespace sail::nn
