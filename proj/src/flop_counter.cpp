#include "greeneval/flop_counter.hpp"

#include <limits>
#include <map>
#include <set>

#include <json.hpp>

#include "greeneval/error.hpp"
#include "greeneval/text.hpp"

namespace greeneval::flops {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::kDomain, "operation count overflows 64 bits");
  return r;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::kDomain, "operation count overflows 64 bits");
  return r;
}

std::uint64_t u(std::int64_t v) { return static_cast<std::uint64_t>(v); }

std::uint64_t product(std::span<const std::int64_t> values) {
  std::uint64_t p = 1;
  for (auto v : values) p = mul(p, u(v));
  return p;
}

int gate_count(Cell cell) {
  switch (cell) {
    case Cell::kRnnTanh: return 1;
    case Cell::kGru: return 3;
    case Cell::kLstm: return 4;
  }
  return 0;
}

void require_positive(std::int64_t v, std::string_view name) {
  if (v < 1) throw Error(ErrorCode::kDomain, std::string(name) + " must be >= 1");
}

[[noreturn]] void shape_error(const std::string& message) { throw Error(ErrorCode::kShape, message); }

void check_shape(const TensorShape& shape) {
  if (shape.dims.empty()) shape_error("input shape must have at least one dimension");
  for (auto d : shape.dims) {
    if (d < 1) shape_error("input shape dims must be >= 1, got " + to_string(shape));
  }
}

// Dense affine output element: `terms` products summed, plus `biases` adds.
OpCount affine(std::uint64_t outputs, std::uint64_t terms, std::uint64_t biases) {
  return {mul(outputs, terms), mul(outputs, terms - 1 + biases)};
}

}  // namespace

Conv conv1d(std::int64_t c_in, std::int64_t c_out, std::int64_t kernel, std::int64_t stride,
            std::int64_t padding, bool bias) {
  return Conv{c_in, c_out, {kernel}, {stride}, {padding}, bias};
}

Conv conv2d(std::int64_t c_in, std::int64_t c_out, std::vector<std::int64_t> kernel,
            std::vector<std::int64_t> stride, std::vector<std::int64_t> padding, bool bias) {
  return Conv{c_in, c_out, std::move(kernel), std::move(stride), std::move(padding), bias};
}

std::string_view kind_name(const LayerSpec& layer) {
  return std::visit(Overloaded{
                        [](const Linear&) -> std::string_view { return "linear"; },
                        [](const Conv& c) -> std::string_view {
                          return c.rank() == 2 ? "conv2d" : "conv1d";
                        },
                        [](const Recurrent& r) -> std::string_view {
                          switch (r.cell) {
                            case Cell::kRnnTanh: return "rnn_tanh";
                            case Cell::kGru: return "gru";
                            case Cell::kLstm: return "lstm";
                          }
                          return "recurrent";
                        },
                    },
                    layer);
}

void validate_layer(const LayerSpec& layer) {
  std::visit(Overloaded{
                 [](const Linear& l) {
                   require_positive(l.in_features, "in_features");
                   require_positive(l.out_features, "out_features");
                 },
                 [](const Conv& c) {
                   require_positive(c.in_channels, "in_channels");
                   require_positive(c.out_channels, "out_channels");
                   if (c.rank() != 1 && c.rank() != 2) {
                     throw Error(ErrorCode::kDomain, "convolution rank must be 1 or 2");
                   }
                   if (c.stride.size() != c.rank() || c.padding.size() != c.rank()) {
                     throw Error(ErrorCode::kDomain,
                                 "kernel_size, stride and padding must have the same rank");
                   }
                   for (std::size_t d = 0; d < c.rank(); ++d) {
                     require_positive(c.kernel[d], "kernel_size");
                     require_positive(c.stride[d], "stride");
                     if (c.padding[d] < 0) throw Error(ErrorCode::kDomain, "padding must be >= 0");
                   }
                 },
                 [](const Recurrent& r) {
                   require_positive(r.input_size, "input_size");
                   require_positive(r.hidden_size, "hidden_size");
                 },
             },
             layer);
}

std::string to_string(const TensorShape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.dims.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(shape.dims[i]);
  }
  return out + "]";
}

std::uint64_t OpCount::fpo(int mac_factor) const {
  switch (mac_factor) {
    case 2: return add(multiplies, adds);
    case 1: return multiplies;
    default: throw Error(ErrorCode::kDomain, "mac factor must be 1 or 2");
  }
}

std::uint64_t layer_params(const LayerSpec& layer) {
  validate_layer(layer);
  return std::visit(
      Overloaded{
          [](const Linear& l) {
            return add(mul(u(l.out_features), u(l.in_features)), l.bias ? u(l.out_features) : 0);
          },
          [](const Conv& c) {
            const std::uint64_t weights =
                mul(u(c.out_channels), mul(u(c.in_channels), product(c.kernel)));
            return add(weights, c.bias ? u(c.out_channels) : 0);
          },
          [](const Recurrent& r) {
            const std::uint64_t h = u(r.hidden_size);
            const std::uint64_t per_gate =
                add(mul(h, add(u(r.input_size), h)), r.bias ? mul(2, h) : 0);
            return mul(static_cast<std::uint64_t>(gate_count(r.cell)), per_gate);
          },
      },
      layer);
}

TensorShape output_shape(const LayerSpec& layer, const TensorShape& in_shape) {
  validate_layer(layer);
  check_shape(in_shape);
  const auto& dims = in_shape.dims;
  return std::visit(
      Overloaded{
          [&](const Linear& l) {
            if (dims.back() != l.in_features) {
              shape_error("linear expects last dim " + std::to_string(l.in_features) + ", got " +
                          to_string(in_shape));
            }
            TensorShape out = in_shape;
            out.dims.back() = l.out_features;
            return out;
          },
          [&](const Conv& c) {
            if (dims.size() != c.rank() + 1) {
              shape_error(std::string(kind_name(layer)) + " expects rank " +
                          std::to_string(c.rank() + 1) + " input [channels, spatial...], got " +
                          to_string(in_shape));
            }
            if (dims[0] != c.in_channels) {
              shape_error(std::string(kind_name(layer)) + " expects " +
                          std::to_string(c.in_channels) + " input channels, got " +
                          to_string(in_shape));
            }
            TensorShape out{{c.out_channels}};
            for (std::size_t d = 0; d < c.rank(); ++d) {
              const std::int64_t span = dims[d + 1] + 2 * c.padding[d] - c.kernel[d];
              if (span < 0) {
                shape_error("spatial dimension " + std::to_string(d) + ": kernel " +
                            std::to_string(c.kernel[d]) + " exceeds padded input " +
                            std::to_string(dims[d + 1] + 2 * c.padding[d]));
              }
              out.dims.push_back(span / c.stride[d] + 1);
            }
            return out;
          },
          [&](const Recurrent& r) {
            if (dims.size() != 2 || dims[1] != r.input_size) {
              shape_error(std::string(kind_name(layer)) + " expects [timesteps, " +
                          std::to_string(r.input_size) + "], got " + to_string(in_shape));
            }
            return TensorShape{{dims[0], r.hidden_size}};
          },
      },
      layer);
}

OpCount layer_ops(const LayerSpec& layer, const TensorShape& in_shape) {
  const TensorShape out = output_shape(layer, in_shape);
  return std::visit(
      Overloaded{
          [&](const Linear& l) {
            const std::uint64_t outputs = product(out.dims);
            return affine(outputs, u(l.in_features), l.bias ? 1 : 0);
          },
          [&](const Conv& c) {
            const std::uint64_t outputs = product(out.dims);
            return affine(outputs, mul(u(c.in_channels), product(c.kernel)), c.bias ? 1 : 0);
          },
          [&](const Recurrent& r) {
            const std::uint64_t timesteps = u(in_shape.dims[0]);
            const std::uint64_t outputs =
                mul(timesteps, mul(static_cast<std::uint64_t>(gate_count(r.cell)), u(r.hidden_size)));
            return affine(outputs, add(u(r.input_size), u(r.hidden_size)), r.bias ? 2 : 0);
          },
      },
      layer);
}

std::uint64_t layer_fpo(const LayerSpec& layer, const TensorShape& in_shape, int mac_factor) {
  return layer_ops(layer, in_shape).fpo(mac_factor);
}

StackTotals stack_totals(std::span<const LayerSpec> layers, const TensorShape& in_shape) {
  StackTotals totals;
  TensorShape shape = in_shape;
  if (layers.empty()) {
    totals.final_shape = shape;
    return totals;
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    LayerTotals lt;
    try {
      lt.params = layer_params(layers[i]);
      lt.ops = layer_ops(layers[i], shape);
      lt.out_shape = output_shape(layers[i], shape);
    } catch (const Error& e) {
      throw Error(e.code(), "layer " + std::to_string(i) + " (" + std::string(kind_name(layers[i])) +
                                "): " + e.what());
    }
    totals.params = add(totals.params, lt.params);
    totals.ops.multiplies = add(totals.ops.multiplies, lt.ops.multiplies);
    totals.ops.adds = add(totals.ops.adds, lt.ops.adds);
    shape = lt.out_shape;
    totals.layers.push_back(std::move(lt));
  }
  totals.final_shape = shape;
  return totals;
}

// ---- layer-stack file format ----

namespace {

[[noreturn]] void stack_parse_error(const std::string& message) {
  throw Error(ErrorCode::kParse, "layer stack: " + message);
}

std::int64_t int_field(const json& j, const std::string& key, std::int64_t fallback, bool required,
                       const std::string& where) {
  if (!j.contains(key)) {
    if (required) stack_parse_error(where + ": missing '" + key + "'");
    return fallback;
  }
  if (!j[key].is_number_integer()) stack_parse_error(where + ": '" + key + "' must be an integer");
  return j[key].get<std::int64_t>();
}

std::vector<std::int64_t> dims_field(const json& j, const std::string& key, std::size_t rank,
                                     std::int64_t fallback, bool required, const std::string& where) {
  if (!j.contains(key)) {
    if (required) stack_parse_error(where + ": missing '" + key + "'");
    return std::vector<std::int64_t>(rank, fallback);
  }
  const json& v = j[key];
  if (v.is_number_integer()) return std::vector<std::int64_t>(rank, v.get<std::int64_t>());
  if (v.is_array() && v.size() == rank) {
    std::vector<std::int64_t> out;
    for (const auto& x : v) {
      if (!x.is_number_integer()) stack_parse_error(where + ": '" + key + "' must hold integers");
      out.push_back(x.get<std::int64_t>());
    }
    return out;
  }
  stack_parse_error(where + ": '" + key + "' must be an integer or a list of " +
                    std::to_string(rank) + " integers");
}

bool bias_field(const json& j, const std::string& where) {
  if (!j.contains("bias")) return true;
  if (!j["bias"].is_boolean()) stack_parse_error(where + ": 'bias' must be true or false");
  return j["bias"].get<bool>();
}

// Dilation and groups are only accepted at their identity value.
void reject_unsupported_options(const json& j, std::size_t rank, const std::string& kind,
                                const std::string& where) {
  if (j.contains("dilation")) {
    for (auto d : dims_field(j, "dilation", rank, 1, false, where)) {
      if (d != 1) {
        throw Error(ErrorCode::kUnsupportedLayer,
                    where + ": dilated " + kind + " is not supported (dilation must be 1)");
      }
    }
  }
  if (j.contains("groups") && int_field(j, "groups", 1, false, where) != 1) {
    throw Error(ErrorCode::kUnsupportedLayer,
                where + ": grouped " + kind + " is not supported (groups must be 1)");
  }
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) stack_parse_error(where + ": unknown field '" + key + "'");
  }
}

LayerSpec layer_from_json(const json& j, std::size_t index) {
  const std::string where = "layer " + std::to_string(index);
  if (!j.is_object()) stack_parse_error(where + ": expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) stack_parse_error(where + ": missing 'kind'");
  const std::string kind = j["kind"].get<std::string>();

  static const std::map<std::string, Cell> kCells{
      {"rnn_tanh", Cell::kRnnTanh}, {"gru", Cell::kGru}, {"lstm", Cell::kLstm}};

  LayerSpec layer;
  if (kind == "linear") {
    reject_unknown(j, {"kind", "in_features", "out_features", "bias"}, where);
    layer = Linear{int_field(j, "in_features", 0, true, where),
                   int_field(j, "out_features", 0, true, where), bias_field(j, where)};
  } else if (kind == "conv1d" || kind == "conv2d") {
    const std::size_t rank = kind == "conv1d" ? 1 : 2;
    reject_unsupported_options(j, rank, kind, where);
    reject_unknown(j,
                   {"kind", "in_channels", "out_channels", "kernel_size", "stride", "padding",
                    "bias", "dilation", "groups"},
                   where);
    layer = Conv{int_field(j, "in_channels", 0, true, where),
                 int_field(j, "out_channels", 0, true, where),
                 dims_field(j, "kernel_size", rank, 0, true, where),
                 dims_field(j, "stride", rank, 1, false, where),
                 dims_field(j, "padding", rank, 0, false, where),
                 bias_field(j, where)};
  } else if (const auto it = kCells.find(kind); it != kCells.end()) {
    reject_unknown(j, {"kind", "input_size", "hidden_size", "bias"}, where);
    layer = Recurrent{it->second, int_field(j, "input_size", 0, true, where),
                      int_field(j, "hidden_size", 0, true, where), bias_field(j, where)};
  } else {
    throw Error(ErrorCode::kUnsupportedLayer,
                where + ": unsupported layer kind '" + kind +
                    "' (supported: linear, conv1d, conv2d, rnn_tanh, gru, lstm)");
  }
  try {
    validate_layer(layer);
  } catch (const Error& e) {
    stack_parse_error(where + " (" + kind + "): " + e.what());
  }
  return layer;
}

json layer_to_json(const LayerSpec& layer) {
  json j{{"kind", std::string(kind_name(layer))}};
  std::visit(Overloaded{
                 [&](const Linear& l) {
                   j["in_features"] = l.in_features;
                   j["out_features"] = l.out_features;
                   j["bias"] = l.bias;
                 },
                 [&](const Conv& c) {
                   j["in_channels"] = c.in_channels;
                   j["out_channels"] = c.out_channels;
                   j["kernel_size"] = c.kernel;
                   j["stride"] = c.stride;
                   j["padding"] = c.padding;
                   j["bias"] = c.bias;
                 },
                 [&](const Recurrent& r) {
                   j["input_size"] = r.input_size;
                   j["hidden_size"] = r.hidden_size;
                   j["bias"] = r.bias;
                 },
             },
             layer);
  return j;
}

}  // namespace

LayerStack parse_layer_stack(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    const auto pos = text::position_of(document, e.byte == 0 ? 0 : e.byte - 1);
    stack_parse_error("line " + std::to_string(pos.line) + ", column " +
                      std::to_string(pos.column) + ": malformed JSON");
  }
  if (!root.is_object()) stack_parse_error("top level must be an object");
  reject_unknown(root, {"format_version", "input_shape", "layers"}, "top level");
  if (root.contains("format_version") && root["format_version"] != kFormatVersion) {
    stack_parse_error("unsupported format_version");
  }
  LayerStack stack;
  if (root.contains("input_shape")) {
    if (!root["input_shape"].is_array()) stack_parse_error("'input_shape' must be a list");
    for (const auto& d : root["input_shape"]) {
      if (!d.is_number_integer()) stack_parse_error("'input_shape' must hold integers");
      stack.input_shape.push_back(d.get<std::int64_t>());
    }
  }
  if (root.contains("layers")) {
    if (!root["layers"].is_array()) stack_parse_error("'layers' must be a list");
    std::size_t i = 0;
    for (const auto& item : root["layers"]) stack.layers.push_back(layer_from_json(item, i++));
  }
  return stack;
}

std::string serialize_layer_stack(const LayerStack& stack) {
  json layers = json::array();
  for (const auto& l : stack.layers) layers.push_back(layer_to_json(l));
  json root{{"format_version", kFormatVersion}, {"layers", std::move(layers)}};
  if (!stack.input_shape.empty()) root["input_shape"] = stack.input_shape;
  return root.dump(2) + "\n";
}

}  // namespace greeneval::flops
