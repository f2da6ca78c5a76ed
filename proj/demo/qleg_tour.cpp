// A short tour of the little q-Legendre hypergroup at q = 1/2 and one
// associated Pollaczek family, printed as plain text.

#include <hypergroup/verify.hpp>

#include <iostream>

using namespace hypergroup;
using Q = Rational;

int main() {
  const Q q(1, 2);
  auto cs = little_q_legendre(q);
  LinearizationTable<Q> table(cs);

  std::cout << "little q-Legendre, q = " << to_string(q) << "\n\n";
  std::cout << "n\ta_n\tb_n\tc_n\n";
  for (std::size_t n = 0; n <= 4; ++n)
    std::cout << n << "\t" << to_string(cs->a(n)) << "\t" << to_string(cs->b(n)) << "\t" << to_string(cs->c(n)) << "\n";

  std::cout << "\nP_1 P_1 = ";
  const auto& row = table.linearize(1, 1);
  for (std::size_t i = 0; i < row.values.size(); ++i)
    std::cout << (i ? " + " : "") << to_string(row.values[i]) << " P_" << row.lo + i;
  std::cout << "\n";

  std::cout << "\nHaar weights:";
  for (std::size_t n = 0; n <= 5; ++n) std::cout << " " << to_string(table.haar(n));
  std::cout << "\n";

  const auto pp = property_p_check(table, 12);
  std::cout << "property (P) up to 12: min g ~ " << pp.min_value.convert_to<double>()
            << (pp.has_violation() ? ", violated" : ", holds") << "\n";

  const auto C = theorem21_constant(q);
  std::cout << "\ncharacter norms at x = 1 - q^n (C = " << to_string(C.value.convert_to<double>()) << ")\n";
  std::cout << "n\t|a|_2^2\t|a|_1\tratio\n";
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto cn = qleg_character_norms(q, n, n + qleg_N(q) + 60);
    std::cout << n << "\t" << cn.l2sq.convert_to<double>() << "\t" << cn.l1.convert_to<double>() << "\t"
              << Q(cn.l1 / cn.l2sq).convert_to<double>() << "\n";
  }

  const PollaczekParams<Q> p(Q(0), Q(1, 4), Q(0));
  auto pc = assoc_pollaczek(p);
  std::cout << "\nassociated Pollaczek (alpha, lambda, nu) = (0, 1/4, 0): c_n =";
  for (std::size_t n = 1; n <= 5; ++n) std::cout << " " << to_string(pc->c(n));
  std::cout << " ... c_500 ~ " << pc->c(500).convert_to<double>() << "\n";

  const auto rep = run_suite("poll-thm25", {{"alpha", "0"}, {"lambda", "1/4"}, {"nu", "0"}});
  std::cout << "suite poll-thm25 at this point: " << to_string(rep.status()) << "\n";
}
