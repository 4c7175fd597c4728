#include "mspinn/net/engine.hpp"

#include "mspinn/net/field.hpp"

namespace mspinn {

Vector net_eval(const Network& net, std::span<const double> theta, std::span<const double> x) {
  if ((int)x.size() != net.cfg.in_dim) throw config_error("net_eval: input dimension mismatch");
  NetCache<double> c;
  net_forward(net, theta, x.data(), c);
  return c.out;
}

Vector grad_params(const ScalarField& f, std::span<const double> theta,
                   std::span<const double> x) {
  if ((int)theta.size() != f.param_count())
    throw config_error("grad_params: parameter vector length mismatch");
  Vector grad(f.param_count(), 0.0);
  f.value_and_grad(theta, x, grad);
  return grad;
}

}  // namespace mspinn
