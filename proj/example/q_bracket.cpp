// Lower-bound evidence and the small-t upper bound for
// Q(t) = psi'(t) - 1/t - 1/(2t^2) - 1/(6t^3) + 1/(30t^5).

#include <iostream>

#include "cmdeg/cmdeg.hpp"

int main() {
  using namespace cmdeg;
  const RemainderSpec q = RemainderSpec::named(Special::Q);
  const PrecisionPolicy policy;

  std::cout << "Q(1) = " << q_value(Real(1L, 128), policy).to_decimal() << "\n";

  CmCheckReport lower = cm_check(q, 4, 12, Grid{}, policy);
  std::cout << "t^4 Q(t), derivatives k <= 12 on " << lower.grid.describe() << ": " << to_string(lower.verdict)
            << " (" << lower.violations.size() << " violations)\n";

  SmallTBound upper = small_t_bound(q, default_small_t_sequence(), 4, policy);
  std::cout << "lim -4 - t Q'(t)/Q(t) as t -> 0+ ~ " << upper.limit.to_string(12) << ", so cmdeg[Q] <= "
            << upper.upper.to_string(6) << "\n";

  CmCheckReport above = cm_check(q, Rational(101, 20), 2, Grid{}, policy);
  std::cout << "r = 5.05: " << to_string(above.verdict);
  if (!above.violations.empty())
    std::cout << " first at k = " << above.violations.front().k << ", t = " << above.violations.front().t.to_string(6);
  std::cout << "\n";
  return 0;
}
