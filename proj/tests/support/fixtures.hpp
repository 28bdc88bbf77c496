#pragma once

#include "tristrat/abstraction.hpp"
#include "tristrat/model.hpp"

#include <string>

namespace tristrat::test {

/// Two states s0, s1; agent a; actions alpha, beta. alpha stays at s0,
/// beta moves s0 to s1, s1 is absorbing; p holds only at s1.
ConcreteCgs m1();
std::string m1_json();

/// States t0..t3, agent a, actions a, b. From t0: a -> t1, b -> t3; from t1:
/// a -> t2, b -> t3; from t2: a -> t2, b -> t3; t3 absorbing. p holds at t2,
/// d holds at t3.
ConcreteCgs c2();
/// {I = t0}, {W = t1, t2}, {D = t3}.
Partition c2_partition(const ConcreteCgs& g);
/// The abstraction of c2 under c2_partition. Blocks are named t0, t1, t3.
ThreeCgs a1();

/// Two states u, v; agent a; one may action a and no must actions. u -> v,
/// v -> v; p is false at u and undefined at v.
ThreeCgs undef_path();

/// States u, v, w; agent a; may actions a, b, must action a. At u, a loops
/// and b moves to v; v and w are absorbing. p holds only at v.
ThreeCgs may_only_witness();

} // namespace tristrat::test
