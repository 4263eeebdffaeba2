// Builds a small second-order chain over three states, solves for its
// stationary distribution with each method, and prints the iteration counts.

#include <homc/homc.hpp>

#include <cstdio>

int main() {
  using namespace homc;

  const Fixture& f = fixture("i");
  const ConditionReport cond = condition_report(f.tensor);
  std::printf("order %d, dim %d, delta_m = %.4f, eta_m = %.4f, unique fixed point: %s\n",
              f.tensor.order(), f.tensor.dim(), cond.delta_m, cond.eta_m,
              cond.uniqueness_holds ? "yes" : "no");

  for (Method method : {Method::Hopm, Method::Geap, Method::Rhopm, Method::Hopmm1,
                        Method::Hopmm2, Method::Qehopm}) {
    SolveReport rep = solve(f.tensor, fixture_config(f, method));
    std::printf("%-7s IT=%3d  RR=%.2e  x = (", to_string(method), rep.iterations,
                rep.residual);
    for (Index i = 0; i < rep.final_x.size(); ++i) {
      std::printf("%s%.6f", i ? ", " : "", rep.final_x[i]);
    }
    std::printf(")\n");
  }

  // the same solvers drive multilinear PageRank through the damped operator
  PageRankProblem problem(gen_random_tensor(3, 4, 0.5, 7), ProbVector::uniform(4), 0.95);
  SolveReport rep = solve_qehopm(problem);
  std::printf("pagerank(theta=0.95, n=4): IT=%d RR=%.2e converged=%s\n", rep.iterations,
              rep.residual, rep.converged ? "yes" : "no");
  return 0;
}
