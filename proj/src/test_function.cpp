#include "splb/test_function.hpp"

#include <algorithm>

#include "splb/errors.hpp"

namespace splb {

TestFunction as_test_function(const SplineFunction& f) {
  TestFunction tf;
  const KnotSequence& kn = f.space().knots();
  tf.a = kn.a();
  tf.b = kn.b();
  tf.max_order = f.space().degree();
  const auto& z = kn.breakpoints();
  tf.breakpoints.assign(z.begin() + 1, z.end() - 1);
  tf.eval = [f](double x, int d) { return f.eval(x, d); };
  return tf;
}

TestFunction difference(const TestFunction& u, const TestFunction& v) {
  if (u.a != v.a || u.b != v.b)
    throw Error("invalid-domain", "difference requires matching domains");
  TestFunction tf;
  tf.a = u.a;
  tf.b = u.b;
  tf.max_order = std::min(u.max_order, v.max_order);
  tf.breakpoints = u.breakpoints;
  tf.breakpoints.insert(tf.breakpoints.end(), v.breakpoints.begin(), v.breakpoints.end());
  std::sort(tf.breakpoints.begin(), tf.breakpoints.end());
  tf.breakpoints.erase(std::unique(tf.breakpoints.begin(), tf.breakpoints.end()), tf.breakpoints.end());
  auto ue = u.eval, ve = v.eval;
  tf.eval = [ue, ve](double x, int d) { return ue(x, d) - ve(x, d); };
  return tf;
}

} // namespace splb
