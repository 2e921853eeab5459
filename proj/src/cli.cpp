#include "qtgi/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "qtgi/errors.hpp"
#include "qtgi/fixtures.hpp"
#include "qtgi/golden.hpp"
#include "qtgi/inverses.hpp"
#include "qtgi/parallel.hpp"
#include "qtgi/qt_io.hpp"

namespace qtgi {

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::optional<unsigned> threads;
  std::optional<double> rtol;

  std::string a, b, c, x, z, w;
  std::string out_path, out_u, out_s, out_v;
  std::string method = "fft";
  std::string along_method = "pinv";
  std::string side;
  std::string example;
  std::string cls;
  std::string fixture_dir = "fixtures";
  std::optional<double> tol;
  std::optional<std::size_t> k;
};

unsigned threads_from_env() {
  const char* env = std::getenv("QTGI_THREADS");
  if (env == nullptr || *env == '\0') {
    return 1;
  }
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v <= 0) {
    throw UsageError("QTGI_THREADS must be a positive integer, got '" + std::string(env) + "'");
  }
  return static_cast<unsigned>(v);
}

QTensor load(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw UsageError("no such file: " + path);
  }
  return read_qt_file(path);
}

int report_exit(std::ostream& out, const ResidualReport& r) {
  out << r;
  return r.pass ? kExitOk : kExitFailed;
}

// Compute commands print their certificate as a diagnostic.
void note_certificate(std::ostream& err, const ResidualReport& r) { err << r; }

int run_command(const std::string& name, const std::string& sub, Options& o, std::ostream& out, std::ostream& err) {
  if (name == "tprod") {
    const QTensor a = load(o.a);
    const QTensor b = load(o.b);
    write_qt_file(o.out_path, o.method == "oracle" ? tprod_oracle(a, b) : tprod_fft(a, b));
    return kExitOk;
  }
  if (name == "pinv") {
    const Certified r = t_pinv_certified(load(o.a), o.rtol, o.tol.value_or(kPenroseTol));
    write_qt_file(o.out_path, r.value);
    note_certificate(err, r.report);
    return kExitOk;
  }
  if (name == "tsvd") {
    const TSVD r = t_svd(load(o.a));
    write_qt_file(o.out_u, r.U);
    write_qt_file(o.out_s, r.S);
    write_qt_file(o.out_v, r.V);
    return kExitOk;
  }
  if (name == "drazin") {
    const Certified r = t_drazin_certified(load(o.a), o.rtol, o.tol.value_or(kDrazinTol));
    write_qt_file(o.out_path, r.value);
    note_certificate(err, r.report);
    return kExitOk;
  }
  if (name == "group") {
    write_qt_file(o.out_path, t_group(load(o.a), o.rtol, o.tol.value_or(kDrazinTol)));
    return kExitOk;
  }
  if (name == "inv-along") {
    const QTensor a = load(o.a);
    const QTensor b = load(o.b);
    const QTensor c = load(o.c);
    const double tol = o.tol.value_or(kAlongTol);
    QTensor z;
    if (o.side == "right") {
      z = o.along_method == "frd" ? t_inv_along_right_frd(a, b, c, o.rtol, tol)
                                  : t_inv_along_right(a, b, c, o.rtol, tol);
    } else {
      if (o.along_method == "frd") {
        throw UsageError("--method frd is only available for the right inverse along");
      }
      z = t_inv_along_left(a, b, c, o.rtol, tol);
    }
    write_qt_file(o.out_path, z);
    return kExitOk;
  }
  if (name == "solve-sandwich") {
    std::optional<QTensor> w;
    if (!o.w.empty()) {
      w = load(o.w);
    }
    write_qt_file(o.out_path, solve_sandwich(load(o.a), load(o.b), load(o.c), w, o.tol.value_or(kAlongTol)));
    return kExitOk;
  }
  if (name == "verify") {
    const QTensor a = load(o.a);
    if (sub == "pinv") {
      return report_exit(out, penrose_residuals(a, load(o.x), o.tol.value_or(kPenroseTol)));
    }
    if (sub == "drazin") {
      const std::size_t k = o.k ? *o.k : std::min(t_multi_index(a, o.rtol).k_max, 2 * a.n1());
      return report_exit(out, drazin_residuals(a, load(o.x), k, o.tol.value_or(kDrazinTol)));
    }
    if (sub == "inv-along") {
      const Side side = o.side == "left" ? Side::Left : Side::Right;
      return report_exit(out,
                         inv_along_residuals(a, load(o.b), load(o.c), load(o.z), side, o.tol.value_or(kAlongTol)));
    }
    return report_exit(out, class_membership(a, load(o.x), PenroseClass::parse(o.cls), o.tol.value_or(kAlongTol)));
  }
  if (name == "example") {
    const GoldenComparison g = compare_reference_example(o.example, o.rtol);
    describe(out, g);
    return g.computed_report.pass ? kExitOk : kExitFailed;
  }
  if (name == "fixtures") {
    std::filesystem::create_directories(o.fixture_dir);
    for (const auto& n : reference_example_names()) {
      const ReferenceExample& ex = reference_example(n);
      const std::string stem = ex.name == "inv-along" ? "example3" : ex.name == "drazin" ? "example2" : "example1";
      for (const auto& [key, t] : ex.inputs) {
        write_qt_file(std::filesystem::path(o.fixture_dir) / (stem + "_" + key + ".qt"), t, ex.provenance);
      }
      write_qt_file(std::filesystem::path(o.fixture_dir) / (stem + "_printed_" + ex.printed_name + ".qt"), ex.printed,
                    ex.provenance);
    }
    return kExitOk;
  }
  throw UsageError("no subcommand given (try --help)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternion tensor T-product algebra and generalized inverses"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker threads for per-frequency work (default: $QTGI_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--rtol", o.rtol, "Relative rank tolerance for frequency blocks")->check(CLI::NonNegativeNumber);

  auto* tprod = app.add_subcommand("tprod", "T-product C = A * B");
  tprod->add_option("A", o.a)->required();
  tprod->add_option("B", o.b)->required();
  tprod->add_option("--out", o.out_path)->required();
  tprod->add_option("--method", o.method)->check(CLI::IsMember({"fft", "oracle"}));

  auto* pinv = app.add_subcommand("pinv", "Moore-Penrose inverse");
  pinv->add_option("A", o.a)->required();
  pinv->add_option("--out", o.out_path)->required();
  pinv->add_option("--tol", o.tol, "Certificate tolerance");

  auto* tsvd = app.add_subcommand("tsvd", "T-SVD A = U * S * V^H");
  tsvd->add_option("A", o.a)->required();
  tsvd->add_option("--out-u", o.out_u)->required();
  tsvd->add_option("--out-s", o.out_s)->required();
  tsvd->add_option("--out-v", o.out_v)->required();

  auto* drazin = app.add_subcommand("drazin", "Drazin inverse");
  drazin->add_option("A", o.a)->required();
  drazin->add_option("--out", o.out_path)->required();
  drazin->add_option("--tol", o.tol, "Certificate tolerance");

  auto* group = app.add_subcommand("group", "Group inverse");
  group->add_option("A", o.a)->required();
  group->add_option("--out", o.out_path)->required();
  group->add_option("--tol", o.tol, "Certificate tolerance");

  auto* along = app.add_subcommand("inv-along", "Right/left inverse of A along two tensors");
  along->add_option("side", o.side)->required()->check(CLI::IsMember({"right", "left"}));
  along->add_option("A", o.a)->required();
  along->add_option("B", o.b, "B (right) or D (left)")->required();
  along->add_option("C", o.c, "C (right) or E (left)")->required();
  along->add_option("--out", o.out_path)->required();
  along->add_option("--method", o.along_method)->check(CLI::IsMember({"pinv", "frd"}));
  along->add_option("--tol", o.tol, "Certificate tolerance");

  auto* sandwich = app.add_subcommand("solve-sandwich", "Solve A * X * B = C");
  sandwich->add_option("A", o.a)->required();
  sandwich->add_option("B", o.b)->required();
  sandwich->add_option("C", o.c)->required();
  sandwich->add_option("--w", o.w, "Free parameter W (default zero)");
  sandwich->add_option("--out", o.out_path)->required();
  sandwich->add_option("--tol", o.tol, "Consistency tolerance");

  auto* verify = app.add_subcommand("verify", "Check defining equations; exit 0 iff they hold");
  verify->require_subcommand(1);
  auto* v_pinv = verify->add_subcommand("pinv", "Penrose equations");
  auto* v_drazin = verify->add_subcommand("drazin", "Drazin equations");
  auto* v_along = verify->add_subcommand("inv-along", "Inverse-along equations");
  auto* v_class = verify->add_subcommand("class", "Membership in A{i,j,...}");
  for (auto* v : {v_pinv, v_drazin, v_along, v_class}) {
    v->add_option("--a", o.a)->required();
    v->add_option("--tol", o.tol);
  }
  for (auto* v : {v_pinv, v_drazin, v_class}) {
    v->add_option("--x", o.x)->required();
  }
  v_drazin->add_option("--k", o.k, "Power in A^(k+1) X = A^k (default: largest block index)");
  v_along->add_option("--side", o.side)->check(CLI::IsMember({"right", "left"}))->default_val("right");
  v_along->add_option("--b", o.b, "B (right) or D (left)")->required();
  v_along->add_option("--c", o.c, "C (right) or E (left)")->required();
  v_along->add_option("--z", o.z)->required();
  v_class->add_option("--class", o.cls, "Equation set, e.g. 1,3")->required();

  auto* example = app.add_subcommand("example", "Recompute a reference example and compare with printed values");
  example->add_option("name", o.example)->required()->check(CLI::IsMember({"mp", "drazin", "inv-along"}));

  auto* fixtures = app.add_subcommand("fixtures", "Write the reference examples as QT1 files");
  fixtures->add_option("--out-dir", o.fixture_dir);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    set_worker_count(o.threads ? *o.threads : threads_from_env());
    const CLI::App* cmd = app.get_subcommands().front();
    std::string sub;
    if (!cmd->get_subcommands().empty()) {
      sub = cmd->get_subcommands().front()->get_name();
    }
    return run_command(cmd->get_name(), sub, o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedClass& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    // Existence and certification failures: the request was well formed.
    err << "failed: " << e.what() << '\n';
    return kExitFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace qtgi
