#pragma once

// Parameter and forward-pass FPO counts for declared layer stacks.
//
// Counting rules (inputs without batch dimension):
//   * a weight product counts one multiply; summing m products costs m - 1
//     adds; each bias adds one more add. With the default MAC factor of 2
//     FPO = multiplies + adds, so a biased dot product of length m is 2m FPO
//     and an unbiased one 2m - 1.
//   * MAC factor 1 reports multiply-accumulates only (one per product).
//   * recurrent cells count the affine gate pre-activations
//     W_ih x + b_ih + W_hh h + b_hh for every gate, hidden unit and timestep.
//     Activation functions and element-wise gate/state updates are excluded.
// Dilated, grouped and transposed convolutions are not supported.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace greeneval::flops {

struct Linear {
  std::int64_t in_features = 1;
  std::int64_t out_features = 1;
  bool bias = true;
};

// 1-D (rank 1) or 2-D (rank 2) convolution over [channels, spatial...].
struct Conv {
  std::int64_t in_channels = 1;
  std::int64_t out_channels = 1;
  std::vector<std::int64_t> kernel{1};
  std::vector<std::int64_t> stride{1};
  std::vector<std::int64_t> padding{0};
  bool bias = true;

  std::size_t rank() const { return kernel.size(); }
};

enum class Cell { kRnnTanh, kGru, kLstm };

// Single-layer, unidirectional recurrent cell over [timesteps, input_size].
struct Recurrent {
  Cell cell = Cell::kLstm;
  std::int64_t input_size = 1;
  std::int64_t hidden_size = 1;
  bool bias = true;
};

using LayerSpec = std::variant<Linear, Conv, Recurrent>;

Conv conv1d(std::int64_t c_in, std::int64_t c_out, std::int64_t kernel, std::int64_t stride = 1,
            std::int64_t padding = 0, bool bias = true);
Conv conv2d(std::int64_t c_in, std::int64_t c_out, std::vector<std::int64_t> kernel,
            std::vector<std::int64_t> stride = {1, 1}, std::vector<std::int64_t> padding = {0, 0},
            bool bias = true);

std::string_view kind_name(const LayerSpec& layer);

// Throws Error(kDomain) naming the offending hyperparameter.
void validate_layer(const LayerSpec& layer);

struct TensorShape {
  std::vector<std::int64_t> dims;

  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

std::string to_string(const TensorShape& shape);

// Multiplies and adds of one forward pass.
struct OpCount {
  std::uint64_t multiplies = 0;
  std::uint64_t adds = 0;

  std::uint64_t fpo(int mac_factor = 2) const;
  friend bool operator==(const OpCount&, const OpCount&) = default;
};

std::uint64_t layer_params(const LayerSpec& layer);

// Throws Error(kShape) on rank/size mismatches or output dims below 1.
TensorShape output_shape(const LayerSpec& layer, const TensorShape& in_shape);

OpCount layer_ops(const LayerSpec& layer, const TensorShape& in_shape);
std::uint64_t layer_fpo(const LayerSpec& layer, const TensorShape& in_shape, int mac_factor = 2);

struct LayerTotals {
  std::uint64_t params = 0;
  OpCount ops;
  TensorShape out_shape;
};

struct StackTotals {
  std::uint64_t params = 0;
  OpCount ops;
  std::vector<LayerTotals> layers;  // one entry per layer, in order

  std::uint64_t fpo(int mac_factor = 2) const { return ops.fpo(mac_factor); }
  // Shape after the last layer (the input shape for an empty stack).
  TensorShape final_shape;
};

// Shape errors are rethrown prefixed with "layer <index> (<kind>)".
StackTotals stack_totals(std::span<const LayerSpec> layers, const TensorShape& in_shape);

struct LayerStack {
  std::vector<LayerSpec> layers;
  std::vector<std::int64_t> input_shape;  // empty when the file does not declare one
};

// Layer-stack file (JSON):
//   {"format_version": 1, "input_shape": [4],
//    "layers": [{"kind": "linear", "in_features": 4, "out_features": 3, "bias": true},
//               {"kind": "conv1d", "in_channels": 1, "out_channels": 8,
//                "kernel_size": 3, "stride": 1, "padding": 1},
//               {"kind": "lstm", "input_size": 8, "hidden_size": 16}]}
// Kinds: linear, conv1d, conv2d, rnn_tanh, gru, lstm. `bias` defaults to true,
// stride to 1, padding to 0; conv2d sizes may be a scalar or a 2-list.
// Unknown kinds and dilation/groups != 1 throw kUnsupportedLayer; other
// unknown fields throw kParse.
LayerStack parse_layer_stack(std::string_view document);
std::string serialize_layer_stack(const LayerStack& stack);

}  // namespace greeneval::flops
