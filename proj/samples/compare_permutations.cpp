// Compares the identity and the swapping permutation for base-b van der
// Corput sequences: exact discrepancies of a prefix and the alpha estimates.
//
//   sample_compare_permutations [base] [N]

#include <cstdio>
#include <cstdlib>

#include <qmcdisc/psi.hpp>

using namespace qmc;

int main(int argc, char** argv) {
  const unsigned b = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 3;
  const std::uint64_t N = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1000;
  try {
    for (const Perm& s : {Perm::identity(b), Perm::swap(b)}) {
      const PermSeq S = PermSeq::constant(s);
      const DiscReport r = formula_disc(S, N);
      const AlphaEstimate a = alpha(s, 6);
      std::printf("sigma=%-12s N=%llu  D*=%s (%.4f)  D=%s  alpha<=%.4f\n", s.str().c_str(),
                  static_cast<unsigned long long>(N), r.dstar->str().c_str(), r.dstar->to_double(),
                  r.dextreme->str().c_str(), a.estimate.to_double());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
