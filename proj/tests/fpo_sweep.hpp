#pragma once

// Exhaustive comparison of the FPO counter against the scalar-op oracle for
// every supported layer kind with hyperparameters up to 4 and inputs up to 6.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "greeneval/error.hpp"
#include "greeneval/flop_counter.hpp"
#include "oracles.hpp"

namespace fpo_sweep {

struct Tallied {
  std::uint64_t muls = 0;
  std::uint64_t adds = 0;
  std::uint64_t fpo() const { return muls + adds; }
};

template <class F>
Tallied tally_of(F&& f) {
  oracle::tally = {};
  f();
  return {oracle::tally.muls, oracle::tally.adds};
}

inline greeneval::flops::TensorShape shape(std::vector<std::int64_t> d) {
  return greeneval::flops::TensorShape{std::move(d)};
}

inline bool throws_shape(const greeneval::flops::LayerSpec& l, const greeneval::flops::TensorShape& s) {
  try {
    greeneval::flops::layer_ops(l, s);
  } catch (const greeneval::Error& e) {
    return e.code() == greeneval::ErrorCode::kShape;
  }
  return false;
}

struct Result {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

inline Result run() {
  using namespace greeneval::flops;
  Result res;
  auto ops_match = [](const OpCount& got, const Tallied& want, std::uint64_t scale = 1) {
    return got.multiplies == scale * want.muls && got.adds == scale * want.adds &&
           got.fpo(2) == scale * want.fpo() && got.fpo(1) == scale * want.muls;
  };

  for (int in = 1; in <= 4; ++in)
    for (int out = 1; out <= 4; ++out)
      for (bool bias : {false, true})
        for (int pos = 1; pos <= 6; ++pos) {
          const Linear l{in, out, bias};
          const auto want = tally_of([&] { oracle::run_linear(in, out, bias, static_cast<std::size_t>(pos)); });
          std::ostringstream what;
          what << "linear in=" << in << " out=" << out << " bias=" << bias << " positions=" << pos;
          bool ok = ops_match(layer_ops(l, shape({pos, in})), want);
          if (pos == 1) ok = ok && ops_match(layer_ops(l, shape({in})), want);
          res.record(ok, what.str());
        }

  const std::pair<Cell, int> cells[] = {{Cell::kRnnTanh, 1}, {Cell::kGru, 3}, {Cell::kLstm, 4}};
  for (const auto& entry : cells)
    for (int input = 1; input <= 4; ++input)
      for (int hidden = 1; hidden <= 4; ++hidden)
        for (bool bias : {false, true})
          for (int steps = 1; steps <= 6; ++steps) {
            const Cell cell = entry.first;
            const int gates = entry.second;
            const Recurrent r{cell, input, hidden, bias};
            const auto want = tally_of([&] { oracle::run_recurrent(gates, input, hidden, steps, bias); });
            std::ostringstream what;
            what << kind_name(r) << " input=" << input << " hidden=" << hidden << " bias=" << bias
                 << " T=" << steps;
            res.record(ops_match(layer_ops(r, shape({steps, input})), want), what.str());
          }

  // Conv1d: direct symbolic execution of every window.
  for (int ci = 1; ci <= 4; ++ci)
    for (int co = 1; co <= 4; ++co)
      for (int k = 1; k <= 4; ++k)
        for (int s = 1; s <= 4; ++s)
          for (int p = 0; p <= 4; ++p)
            for (int len = 1; len <= 6; ++len)
              for (bool bias : {false, true}) {
                const Conv c = conv1d(ci, co, k, s, p, bias);
                int oh = 0, ow = 0;
                bool fits = false;
                const auto want = tally_of([&] {
                  fits = oracle::run_conv2d(ci, co, 1, k, 1, s, 0, p, 1, len, bias, &oh, &ow);
                });
                std::ostringstream what;
                what << "conv1d c_in=" << ci << " c_out=" << co << " k=" << k << " s=" << s << " p=" << p
                     << " len=" << len << " bias=" << bias;
                if (!fits) {
                  res.record(throws_shape(c, shape({ci, len})), what.str());
                  continue;
                }
                res.record(output_shape(c, shape({ci, len})) == shape({co, ow}) &&
                               ops_match(layer_ops(c, shape({ci, len})), want),
                           what.str());
              }

  // Conv2d: the per-window cost comes from symbolic execution of one window;
  // placements are enumerated independently along each axis.
  std::map<std::tuple<int, int, int, bool>, Tallied> window;
  for (int ci = 1; ci <= 4; ++ci)
    for (int kh = 1; kh <= 4; ++kh)
      for (int kw = 1; kw <= 4; ++kw)
        for (bool bias : {false, true})
          window[{ci, kh, kw, bias}] =
              tally_of([&] { oracle::run_conv2d(ci, 1, kh, kw, 1, 1, 0, 0, kh, kw, bias); });

  for (int ci = 1; ci <= 4; ++ci)
    for (int co = 1; co <= 4; ++co)
      for (int kh = 1; kh <= 4; ++kh)
        for (int kw = 1; kw <= 4; ++kw)
          for (int sh = 1; sh <= 4; ++sh)
            for (int sw = 1; sw <= 4; ++sw)
              for (int ph = 0; ph <= 4; ++ph)
                for (int pw = 0; pw <= 4; ++pw)
                  for (bool bias : {false, true}) {
                    const Conv c = conv2d(ci, co, {kh, kw}, {sh, sw}, {ph, pw}, bias);
                    const Tallied per = window[{ci, kh, kw, bias}];
                    for (int h = 1; h <= 6; ++h) {
                      const int oh = oracle::placements(h, kh, sh, ph);
                      for (int w = 1; w <= 6; ++w) {
                        const int ow = oracle::placements(w, kw, sw, pw);
                        const auto in = shape({ci, h, w});
                        bool ok;
                        if (oh < 1 || ow < 1) {
                          ok = throws_shape(c, in);
                        } else {
                          const auto n = static_cast<std::uint64_t>(co) * static_cast<std::uint64_t>(oh) *
                                         static_cast<std::uint64_t>(ow);
                          ok = ops_match(layer_ops(c, in), per, n);
                        }
                        if (!ok) {
                          std::ostringstream what;
                          what << "conv2d c_in=" << ci << " c_out=" << co << " k=" << kh << "x" << kw
                               << " s=" << sh << "x" << sw << " p=" << ph << "x" << pw << " in=" << h << "x" << w
                               << " bias=" << bias;
                          res.record(false, what.str());
                        } else {
                          ++res.checked;
                        }
                      }
                    }
                  }

  // The factored conv2d oracle itself, against full symbolic execution.
  for (int co = 1; co <= 2; ++co)
    for (int kh = 1; kh <= 3; ++kh)
      for (int sh = 1; sh <= 3; ++sh)
        for (int ph = 0; ph <= 2; ++ph)
          for (int h = 1; h <= 6; ++h) {
            int oh = 0, ow = 0;
            bool fits = false;
            const auto want = tally_of(
                [&] { fits = oracle::run_conv2d(2, co, kh, 2, sh, 1, ph, 1, h, 5, true, &oh, &ow); });
            if (!fits) continue;
            std::ostringstream what;
            what << "conv2d full execution c_out=" << co << " kh=" << kh << " sh=" << sh << " ph=" << ph
                 << " h=" << h;
            res.record(ops_match(layer_ops(conv2d(2, co, {kh, 2}, {sh, 1}, {ph, 1}, true), shape({2, h, 5})), want),
                       what.str());
          }
  return res;
}

}  // namespace fpo_sweep
