// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qtgi/cli.hpp"
#include "qtgi/errors.hpp"
#include "qtgi/fixtures.hpp"
#include "qtgi/golden.hpp"
#include "qtgi/inverses.hpp"
#include "qtgi/parallel.hpp"
#include "qtgi/qt_io.hpp"
#include "test_support.hpp"

namespace {

using namespace qtgi;
using namespace qtgi::testing;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

Outcome fast_path_equivalence() {
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n1 = uniform(rng, 1, 6), n2 = uniform(rng, 1, 5), m = uniform(rng, 1, 5), n3 = uniform(rng, 1, 4);
    const QTensor a = random_tensor(rng, n1, n2, n3);
    const QTensor b = random_tensor(rng, n2, m, n3);
    const double scale = std::max(1.0, t_fro_norm(a) * t_fro_norm(b));
    worst = std::max(worst, t_fro_norm(tprod_fft(a, b) - tprod_oracle(a, b)) / scale);
  }
  return {worst <= 1e-12, "max scaled difference " + sci(worst)};
}

Outcome noncommutativity_witness() {
  QTensor a(1, 1, 2), b(1, 1, 2);
  a(0, 0, 0) = 1.0;
  a(0, 0, 1) = Quaternion::unit_j();
  b(0, 0, 0) = Quaternion::unit_i();
  b(0, 0, 1) = Quaternion::unit_k();
  QTensor expected(1, 1, 2);
  expected(0, 0, 0) = 2.0 * Quaternion::unit_i();
  const double d_oracle = t_fro_norm(tprod_oracle(a, b) - expected);
  const double d_fft = t_fro_norm(tprod_fft(a, b) - expected);
  return {d_oracle <= 1e-15 && d_fft <= 1e-15, "oracle " + sci(d_oracle) + ", fft " + sci(d_fft)};
}

Outcome penrose_suite() {
  Rng rng(303);
  double worst_full = 0.0, worst_deficient = 0.0;
  bool pass = true;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n1 = uniform(rng, 1, 6), n2 = uniform(rng, 1, 5), n3 = uniform(rng, 1, 4);
    const bool deficient = t < 20;
    QTensor a;
    if (deficient) {
      const std::size_t n1d = uniform(rng, 2, 6), n2d = uniform(rng, 2, 5);
      a = random_low_rank(rng, n1d, n2d, n3, uniform(rng, 1, std::min(n1d, n2d) - 1));
    } else {
      a = random_tensor(rng, n1, n2, n3);
    }
    const ResidualReport r = penrose_residuals(a, t_pinv(a), deficient ? 1e-8 : 1e-10);
    pass = pass && r.pass;
    (deficient ? worst_deficient : worst_full) = std::max(deficient ? worst_deficient : worst_full, r.max_value());
  }
  return {pass, "full rank max " + sci(worst_full) + ", rank deficient max " + sci(worst_deficient)};
}

Outcome pinv_identities() {
  Rng rng(404);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n1 = uniform(rng, 1, 5), n2 = uniform(rng, 1, 5), n3 = uniform(rng, 1, 4);
    const QTensor a = random_tensor(rng, n1, n2, n3);
    const QTensor ah = t_conj_transpose(a);
    const QTensor ap = t_pinv(a);
    const QTensor aph = t_pinv(ah);
    const QTensor ahap = t_pinv(tprod_oracle(ah, a));
    const QTensor aahp = t_pinv(tprod_oracle(a, ah));
    const double r[] = {
        rel_diff(aph, t_conj_transpose(ap)),
        rel_diff(ahap, tprod_oracle(ap, aph)),
        std::max(rel_diff(tprod_oracle(tprod_oracle(ah, a), ap), ah), rel_diff(tprod_oracle(tprod_oracle(ap, a), ah), ah)),
        rel_diff(tprod_oracle(ahap, ah), ap),
        rel_diff(tprod_oracle(ah, aahp), ap),
    };
    worst = std::max(worst, *std::max_element(std::begin(r), std::end(r)));
  }
  return {worst <= 1e-9, "max relative residual over five identities " + sci(worst)};
}

Outcome tsvd_suite() {
  Rng rng(505);
  double recon = 0.0, orth = 0.0, fdiag = 0.0, diag_dev = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n1 = uniform(rng, 1, 5), n2 = uniform(rng, 1, 4), n3 = uniform(rng, 1, 4);
    const QTensor a = random_tensor(rng, n1, n2, n3);
    const TSVD s = t_svd(a);
    recon = std::max(recon, relative_residual(tprod_oracle(tprod_oracle(s.U, s.S), t_conj_transpose(s.V)), a));
    orth = std::max({orth, orthogonality_residual(s.U), orthogonality_residual(s.V)});
    fdiag = std::max(fdiag, f_diagonal_residual(s.S));
    const FrequencyStack fs = to_frequency(s.S);
    for (std::size_t i = 0; i < n3; ++i) {
      if (!FrequencyStack::self_paired(i, n3)) {
        continue;
      }
      const CMatrix& blk = fs.blocks[i];
      for (Eigen::Index d = 0; d < std::min(blk.rows(), blk.cols()); ++d) {
        diag_dev = std::max({diag_dev, std::abs(blk(d, d).imag()), -blk(d, d).real()});
      }
    }
  }
  const bool pass = recon <= 1e-10 && orth <= 1e-10 && fdiag <= 1e-10 && diag_dev <= 1e-10;
  return {pass, "reconstruction " + sci(recon) + ", orthogonality " + sci(orth) + ", F-diagonal " + sci(fdiag) +
                    ", self-paired diagonal " + sci(diag_dev)};
}

Outcome drazin_suite() {
  Rng rng(606);
  double worst = 0.0, worst_cross = 0.0;
  int index_misses = 0;
  bool pass = true;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = uniform(rng, 1, 4), n3 = uniform(rng, 1, 4);
    const ConstructedDrazin c = constructed_drazin(rng, n, n3, 3);
    const MultiIndex mi = t_multi_index(c.a);
    if (mi.indices != c.indices || mi.k_max != c.k_max) {
      ++index_misses;
    }
    const std::size_t k = std::min(mi.k_max, 2 * n);
    const QTensor x = t_drazin(c.a);
    const ResidualReport r = drazin_residuals(c.a, x, k);
    pass = pass && r.pass;
    worst = std::max(worst, r.max_value());
    QTensor ak = t_power(c.a, k);
    // A nilpotent tensor has A^k = 0; the computed power is roundoff, and the
    // inverse along (B, C) is invariant under rescaling B and C.
    if (t_fro_norm(ak) <= 1e-12 * std::pow(std::max(1.0, t_fro_norm(c.a)), static_cast<double>(k))) {
      ak = QTensor::zero(n, n, n3);
    }
    worst_cross = std::max(worst_cross, rel_diff(x, t_inv_along_right(c.a, ak, ak)));
  }
  pass = pass && index_misses == 0 && worst_cross <= 1e-8;
  return {pass, "residual max " + sci(worst) + ", index mismatches " + std::to_string(index_misses) +
                    ", vs inverse along (A^k, A^k) " + sci(worst_cross)};
}

Outcome golden(const std::string& name, std::vector<GoldenComparison>& out) {
  GoldenComparison g = compare_reference_example(name);
  std::string detail = "our residual max " + sci(g.computed_report.max_value()) + " (tol " +
                       sci(g.computed_report.tol) + "); printed tensor " +
                       (g.printed_is_valid() ? "valid" : "fails its equations") + " (residual max " +
                       sci(g.printed_report.max_value()) + "); max deviation " + sci(g.max_deviation);
  const bool pass = g.satisfied();
  out.push_back(std::move(g));
  return {pass, detail};
}

Outcome cross_formula() {
  Rng rng(1010);
  double worst = 0.0;
  int failures = 0;
  for (int t = 0; t < 30; ++t) {
    const std::size_t n1 = uniform(rng, 2, 5), n2 = uniform(rng, 2, 5), n3 = uniform(rng, 1, 4);
    const std::size_t r = uniform(rng, 1, std::min(n1, n2));
    const std::size_t l = uniform(rng, r, 5), k = uniform(rng, r, 5);
    const QTensor a = random_tensor(rng, n1, n2, n3);
    const QTensor b = random_low_rank(rng, n2, l, n3, r);
    const QTensor c = random_low_rank(rng, k, n1, n3, r);
    try {
      worst = std::max(worst, rel_diff(t_inv_along_right_frd(a, b, c), t_inv_along_right(a, b, c)));
    } catch (const Error&) {
      ++failures;
    }
  }
  return {failures == 0 && worst <= 1e-8, "max difference " + sci(worst) + ", failures " + std::to_string(failures)};
}

Outcome family_suite() {
  Rng rng(1111);
  const PenroseClass classes[] = {PenroseClass{1}, PenroseClass{1, 3}, PenroseClass{1, 4}};
  double worst = 0.0, worst_ax = 0.0;
  bool pass = true;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n1 = uniform(rng, 1, 5), n2 = uniform(rng, 1, 5), n3 = uniform(rng, 1, 4);
    const QTensor a = t < 15 && std::min(n1, n2) > 1 ? random_low_rank(rng, n1, n2, n3, 1) : random_tensor(rng, n1, n2, n3);
    const QTensor z = random_tensor(rng, n2, n1, n3);
    for (const auto& cls : classes) {
      const ResidualReport r = class_membership(a, gen_family(a, z, cls), cls);
      pass = pass && r.pass;
      worst = std::max(worst, r.max_value());
    }
    const QTensor ax0 = tprod_oracle(a, gen_family(a, random_tensor(rng, n2, n1, n3), classes[1]));
    for (int s = 1; s < 10; ++s) {
      const QTensor ax = tprod_oracle(a, gen_family(a, random_tensor(rng, n2, n1, n3), classes[1]));
      worst_ax = std::max(worst_ax, rel_diff(ax, ax0));
    }
  }
  pass = pass && worst_ax <= 1e-9;
  return {pass, "membership max " + sci(worst) + ", A*X spread over Z in {1,3} " + sci(worst_ax)};
}

Outcome sandwich_suite() {
  Rng rng(1212);
  double worst = 0.0;
  bool pass = true;
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = uniform(rng, 1, 5), n = uniform(rng, 1, 5), p = uniform(rng, 1, 5), q = uniform(rng, 1, 5),
                      n3 = uniform(rng, 1, 4);
    const QTensor a = random_tensor(rng, m, n, n3);
    const QTensor b = random_tensor(rng, p, q, n3);
    const QTensor c = tprod_oracle(tprod_oracle(a, random_tensor(rng, n, p, n3)), b);
    try {
      const QTensor x = solve_sandwich(a, b, c, random_tensor(rng, n, p, n3));
      const double r = relative_residual(tprod_oracle(tprod_oracle(a, x), b), c);
      worst = std::max(worst, r);
      pass = pass && r <= 1e-8;
    } catch (const Error&) {
      pass = false;
    }
  }
  int rejected = 0;
  for (int t = 0; t < 10; ++t) {
    const std::size_t m = uniform(rng, 2, 5), n = uniform(rng, 2, 5), p = uniform(rng, 1, 5), q = uniform(rng, 1, 5),
                      n3 = uniform(rng, 1, 4);
    const QTensor a = random_low_rank(rng, m, n, n3, 1);
    const QTensor b = random_tensor(rng, p, q, n3);
    try {
      solve_sandwich(a, b, random_tensor(rng, m, q, n3));
    } catch (const Inconsistent&) {
      ++rejected;
    }
  }
  return {pass && rejected == 10, "consistent max residual " + sci(worst) + ", inconsistent rejected " +
                                      std::to_string(rejected) + "/10"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome io_suite() {
  Rng rng(1313);
  int mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    const QTensor a = random_tensor(rng, uniform(rng, 1, 6), uniform(rng, 1, 6), uniform(rng, 1, 5));
    const QTensor back = parse_qt(serialize_qt(a));
    if (std::memcmp(a.entries().data(), back.entries().data(), a.entries().size() * sizeof(Quaternion)) != 0 ||
        !same_shape(a, back)) {
      ++mismatches;
    }
  }
  int fixtures = 0;
  for (const auto& entry : std::filesystem::directory_iterator(QTGI_FIXTURE_DIR)) {
    if (entry.path().extension() != ".qt") {
      continue;
    }
    ++fixtures;
    const QTensor a = read_qt_file(entry.path());
    const QTensor back = parse_qt(serialize_qt(a));
    if (!(back == a) || serialize_qt(back) != serialize_qt(a)) {
      ++mismatches;
    }
  }

  const auto dir = std::filesystem::temp_directory_path() / "qtgi_acceptance";
  std::filesystem::create_directories(dir);
  const QTensor a = random_tensor(rng, 4, 3, 5);
  const QTensor sq = random_tensor(rng, 4, 4, 5);
  const QTensor b = random_tensor(rng, 3, 2, 5);
  write_qt_file(dir / "a.qt", a);
  write_qt_file(dir / "sq.qt", sq);
  write_qt_file(dir / "b.qt", b);
  write_qt_file(dir / "c.qt", random_tensor(rng, 2, 4, 5));
  write_qt_file(dir / "d.qt", random_tensor(rng, 4, 2, 5));
  const auto p = [&](const char* f) { return (dir / f).string(); };
  int nondeterministic = 0;
  int command_failures = 0;
  const std::vector<std::vector<std::string>> commands = {
      {"tprod", p("a.qt"), p("b.qt"), "--out", "OUT"},
      {"pinv", p("a.qt"), "--out", "OUT"},
      {"drazin", p("sq.qt"), "--out", "OUT"},
      {"tsvd", p("a.qt"), "--out-u", "OUT", "--out-s", "OUT.s", "--out-v", "OUT.v"},
      {"inv-along", "right", p("sq.qt"), p("d.qt"), p("c.qt"), "--out", "OUT"},
  };
  for (std::size_t ci = 0; ci < commands.size(); ++ci) {
    std::string reference;
    for (const char* threads : {"1", "2", "4"}) {
      std::vector<std::string> args = {"--threads", threads};
      const std::string out = p(("out" + std::to_string(ci) + "_" + threads + ".qt").c_str());
      for (auto arg : commands[ci]) {
        if (arg.rfind("OUT", 0) == 0) {
          arg = out + arg.substr(3);
        }
        args.push_back(arg);
      }
      std::ostringstream sink;
      if (run_cli(args, sink, sink) != kExitOk) {
        ++command_failures;
        continue;
      }
      std::string bytes = slurp(out);
      if (std::filesystem::exists(out + ".s")) {
        bytes += slurp(out + ".s") + slurp(out + ".v");
      }
      if (reference.empty()) {
        reference = bytes;
      } else if (bytes != reference) {
        ++nondeterministic;
      }
    }
  }
  std::filesystem::remove_all(dir);
  set_worker_count(1);
  const bool pass = mismatches == 0 && fixtures > 0 && nondeterministic == 0 && command_failures == 0;
  return {pass, "round-trip mismatches " + std::to_string(mismatches) + " (" + std::to_string(fixtures) +
                    " fixtures), thread-dependent outputs " + std::to_string(nondeterministic) +
                    ", command failures " + std::to_string(command_failures)};
}

void write_golden_report(const std::vector<GoldenComparison>& results) {
  std::ofstream os(QTGI_REPORT_PATH);
  os << "# Golden comparison of the reference examples\n\n"
        "Generated by the acceptance suite. Each printed tensor is first checked against its own\n"
        "defining equations at " << kPrintedTol << ". A componentwise match is required only when the printed\n"
        "tensor passes; otherwise the example rests on our certificate and the discrepancy is\n"
        "recorded here.\n\n";
  for (const auto& g : results) {
    os << "## " << g.name << "\n\n```\n";
    describe(os, g);
    os << "```\n\n";
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<GoldenComparison> goldens;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Oracle/fast-path equivalence", fast_path_equivalence},
      {"Noncommutativity witness", noncommutativity_witness},
      {"Penrose suite", penrose_suite},
      {"Moore-Penrose identities", pinv_identities},
      {"T-SVD", tsvd_suite},
      {"Drazin suite", drazin_suite},
      {"Reference example 1 (Moore-Penrose)", [&] { return golden("mp", goldens); }},
      {"Reference example 2 (Drazin)", [&] { return golden("drazin", goldens); }},
      {"Reference example 3 (inverse along B, C)", [&] { return golden("inv-along", goldens); }},
      {"Cross-formula agreement", cross_formula},
      {"Family generators", family_suite},
      {"solve_sandwich", sandwich_suite},
      {"IO round-trip and CLI determinism", io_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " - "
              << o.detail << std::endl;
  }
  write_golden_report(goldens);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in " << secs << " s"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
