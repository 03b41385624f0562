// Writes the hypergeometric conformance fixture from the dd oracle.
// usage: gen_fixture <out.csv> [count]

#include "oracle.hpp"

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>

int main(int argc, char **argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s out.csv [count]\n", argv[0]);
    return 1;
  }
  const int want = argc > 2 ? std::atoi(argv[2]) : 200;
  std::FILE *f = std::fopen(argv[1], "w");
  if (!f) {
    std::perror(argv[1]);
    return 1;
  }
  std::fprintf(f, "a_re,a_im,c,z_re,z_im,M_re,M_im,U_re,U_im\n");

  const std::complex<double> ks[] = {{0.1, 0.5},  {0.01, 1.0}, {0.5, 0.1},
                                     {-0.3, 0.4}, {0.3, -0.6}, {-0.2, -0.7},
                                     {0.8, 0.25}, {-0.6, 0.15}};
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> pick_k(0, 7), pick_l(0, 2), pick_j(0, 2);
  std::uniform_real_distribution<double> logr(-3.0, std::log10(40.0));

  int written = 0, tried = 0;
  while (written < want && tried < 50 * want) {
    ++tried;
    const auto k = ks[pick_k(rng)];
    const int l = pick_l(rng), j = pick_j(rng);
    const std::complex<double> a = double(l + 1 + j) - 1.0 / k;
    const int c = 2 * l + 2 + j;
    const std::complex<double> kz = 2.0 * k;
    double r = std::pow(10.0, logr(rng));
    const std::complex<double> z = kz * r;
    if (std::abs(z) > 40.0)
      continue;
    const oracle::CDD ad(a), zd(z);
    const auto m = oracle::kummer_m(ad, oracle::CDD(double(c)), zd);
    const auto u = oracle::tricomi_u(ad, c, zd);
    if (m.rel_err > 1e-14 || u.rel_err > 1e-14)
      continue;
    const auto mv = susyhydra::to_complex(m.v), uv = susyhydra::to_complex(u.v);
    std::fprintf(f, "%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                 a.real(), a.imag(), c, z.real(), z.imag(), mv.real(),
                 mv.imag(), uv.real(), uv.imag());
    ++written;
  }
  std::fclose(f);
  std::printf("wrote %d rows (%d candidates)\n", written, tried);
  return written == want ? 0 : 2;
}
