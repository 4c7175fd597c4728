#pragma once

#include <memory>

#include "mspinn/net/engine.hpp"

namespace mspinn {

struct InputDerivatives {
  double value = 0.0, d1 = 0.0, d2 = 0.0;
};

/// A scalar-valued function of (theta, x), differentiable in both. The trace
/// of a forward evaluation is replayed by the reverse sweep, so gradients are
/// exact up to floating point. Implementations must be reentrant.
class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual int param_count() const = 0;
  virtual int input_dim() const = 0;
  virtual double value(std::span<const double> theta, std::span<const double> x) const = 0;
  /// Accumulates df/dtheta into grad (expects grad zeroed by the caller) and
  /// returns the value.
  virtual double value_and_grad(std::span<const double> theta, std::span<const double> x,
                                std::span<double> grad) const = 0;
  /// (f, df/dx_c, d2f/dx_c^2) at x for one designated coordinate.
  virtual InputDerivatives input_derivatives(std::span<const double> theta,
                                             std::span<const double> x, int coord) const = 0;
};

/// Full flat gradient df/dtheta. Throws numeric_error on non-finite
/// intermediates, naming the layer for network-backed fields.
Vector grad_params(const ScalarField& f, std::span<const double> theta,
                   std::span<const double> x);

/// One output of a Network viewed as a ScalarField.
class NetworkField final : public ScalarField {
 public:
  NetworkField(const Network& net, int output_index = 0)
      : net_(&net), output_(output_index) {
    if (output_index < 0 || output_index >= net.cfg.out_dim)
      throw config_error("NetworkField: output index out of range");
  }

  int param_count() const override { return net_->param_count(); }
  int input_dim() const override { return net_->cfg.in_dim; }

  double value(std::span<const double> theta, std::span<const double> x) const override {
    NetCache<double> c;
    net_forward(*net_, theta, x.data(), c, /*check_finite=*/true);
    return c.out[output_];
  }

  double value_and_grad(std::span<const double> theta, std::span<const double> x,
                        std::span<double> grad) const override {
    if ((int)grad.size() != net_->param_count())
      throw config_error("NetworkField: gradient buffer size mismatch");
    NetCache<double> c;
    net_forward(*net_, theta, x.data(), c, /*check_finite=*/true);
    std::vector<double> seed(net_->cfg.out_dim, 0.0);
    seed[output_] = 1.0;
    net_backward(*net_, theta, c, seed.data(), grad.data());
    return c.out[output_];
  }

  InputDerivatives input_derivatives(std::span<const double> theta, std::span<const double> x,
                                     int coord) const override {
    if (coord < 0 || coord >= net_->cfg.in_dim)
      throw config_error("input_derivatives: coordinate index out of range");
    std::vector<Dual2> xs(net_->cfg.in_dim);
    for (int i = 0; i < net_->cfg.in_dim; ++i)
      xs[i] = i == coord ? Dual2::seed(x[i], 0) : Dual2(x[i]);
    NetCache<Dual2> c;
    net_forward(*net_, theta, xs.data(), c, /*check_finite=*/true);
    const Dual2& o = c.out[output_];
    return {o.value(), o.d1(0), o.d2(0)};
  }

  const Network& network() const { return *net_; }

 private:
  const Network* net_;
  int output_;
};

}  // namespace mspinn
