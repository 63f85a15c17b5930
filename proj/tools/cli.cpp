#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ringdecomp/error.hpp"
#include "ringdecomp/json_io.hpp"
#include "ringdecomp/testkit.hpp"

namespace ringdecomp::cli {
namespace {

using json_io::json;

struct Args {
  std::string ring;
  std::string kind;
  std::string in;
  std::string out = "-";
  double tol = 1e-8;
  double cluster_tol = 1e-6;
  std::uint64_t seed = 7;
  std::size_t trials = 50;
};

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnsupportedRingKind: return kUnsupported;
    case ErrorCode::ClusterAmbiguity: return kAmbiguous;
    default: return kBadInput;
  }
}

DecompOptions decomp_options(const Args& a) {
  DecompOptions o;
  o.tol = a.tol;
  o.cluster_tol = a.cluster_tol;
  return o;
}

void check_ring(const Args& a, RingId actual) {
  if (!a.ring.empty() && parse_ring(a.ring) != actual)
    throw Error(ErrorCode::RingMismatch,
                "input ring '" + std::string(ring_name(actual)) + "' does not match --ring " + a.ring);
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string describe(const Block& b) {
  std::string s(block_kind_name(b.kind));
  if (b.kind != BlockKind::GraphComponent && b.size != 1) s += " m=" + std::to_string(b.size);
  const auto names = param_names(b.kind);
  for (std::size_t i = 0; i < names.size() && i < b.params.size(); ++i)
    if (names[i] != "theta_period") s += " " + std::string(names[i]) + "=" + fmt(b.params[i]);
  if (b.kind == BlockKind::GraphComponent) {
    s += " n=" + std::to_string(b.size) + " [";
    for (std::size_t i = 0; i < b.graph.size(); ++i) s += (i ? "," : "") + std::to_string(b.graph[i]);
    s += "]";
  }
  return s;
}

void emit(const Args& a, const json& j, std::ostream& out) {
  if (a.out == "-")
    out << j.dump(2) << '\n';
  else
    json_io::write_file(a.out, j);
}

int cmd_decompose(const Args& a, std::ostream& out, std::ostream& err) {
  const json in = json_io::read_file(a.in);
  const Matrix m = json_io::matrix_from_json(in.contains("matrix") ? in.at("matrix") : in);
  check_ring(a, m.ring());
  const DecompKind kind = parse_kind(a.kind);
  const Factorization f = decompose(m, kind, decomp_options(a));
  const auto rep = testkit::verify_factorization(m, f, a.tol);

  // Summary goes to stderr when the JSON itself is written to stdout.
  std::ostream& log = a.out == "-" ? err : out;
  log << kind_name(kind) << " over " << ring_name(m.ring()) << ", " << m.rows() << "x" << m.cols() << ": "
      << f.blocks.size() << (f.blocks.size() == 1 ? " block\n" : " blocks\n");
  for (const auto& b : f.blocks.items()) log << "  " << describe(b) << '\n';
  log << "residual " << fmt(rep.residual) << ", left " << fmt(rep.left_residual) << ", right "
      << fmt(rep.right_residual) << '\n';

  emit(a,
       {{"matrix", json_io::matrix_to_json(m)},
        {"factorization", json_io::factorization_to_json(f)},
        {"residuals", {{"reconstruction", rep.residual}, {"left", rep.left_residual}, {"right", rep.right_residual}}}},
       out);
  return kOk;
}

int cmd_verify(const Args& a, std::ostream& out) {
  const json in = json_io::read_file(a.in);
  if (!in.contains("matrix") || !in.contains("factorization"))
    throw Error(ErrorCode::Parse, "verify input needs \"matrix\" and \"factorization\"");
  const Matrix m = json_io::matrix_from_json(in.at("matrix"));
  check_ring(a, m.ring());
  const Factorization f = json_io::factorization_from_json(in.at("factorization"));
  if (f.left.ring() != m.ring() || f.right.ring() != m.ring())
    throw Error(ErrorCode::RingMismatch, "factor ring does not match the matrix ring");
  if (!a.kind.empty() && parse_kind(a.kind) != f.kind)
    throw Error(ErrorCode::Parse, "--kind " + a.kind + " does not match the factorization");

  const auto rep = testkit::verify_factorization(m, f, a.tol);
  out << "reconstruction " << fmt(rep.residual) << '\n';
  out << "left           " << fmt(rep.left_residual) << '\n';
  out << "right          " << fmt(rep.right_residual) << '\n';
  for (std::size_t i = 0; i < rep.generator.size(); ++i)
    out << "block " << i << " " << describe(f.blocks.items()[i]) << (rep.generator[i] ? "" : "  [not a generator]")
        << '\n';
  for (const auto& why : rep.failures) out << "FAIL " << why << '\n';
  out << (rep.pass ? "PASS" : "FAIL") << " at tol " << a.tol << '\n';
  return rep.pass ? kOk : kFailed;
}

int cmd_selftest(const Args& a, std::ostream& out) {
  testkit::SelftestOptions o;
  o.trials = a.trials;
  o.seed = a.seed;
  o.decomp = decomp_options(a);
  if (!a.ring.empty()) o.ring = parse_ring(a.ring);
  if (!a.kind.empty()) o.kind = parse_kind(a.kind);

  const auto t0 = std::chrono::steady_clock::now();
  const auto cells = testkit::run_selftest(o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool all = true;
  out << std::left << std::setw(16) << "ring" << std::setw(10) << "kind" << std::setw(8) << "trials" << std::setw(10)
      << "failures" << std::setw(10) << "refusals" << "result\n";
  for (const auto& c : cells) {
    all = all && c.pass();
    out << std::left << std::setw(16) << ring_name(c.ring) << std::setw(10) << kind_name(c.kind) << std::setw(8)
        << c.trials << std::setw(10) << c.failures << std::setw(10) << c.refusals << (c.pass() ? "pass" : "FAIL")
        << '\n';
    for (const auto& n : c.notes) out << "    " << n << '\n';
  }
  out << (all ? "all cells pass" : "some cells failed") << " (" << std::fixed << std::setprecision(2) << secs
      << " s)\n";
  return all ? kOk : kFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical SVD, spectral and Jordan decompositions over *-rings"};
  app.require_subcommand(1);
  Args a;

  const auto common = [&a](CLI::App* sub) {
    sub->add_option("--ring", a.ring,
                    "zero, real, complex, dual-trivial, dual-conj, quaternion, double-complex, integer");
    sub->add_option("--tol", a.tol, "residual tolerance")->capture_default_str();
    sub->add_option("--cluster-tol", a.cluster_tol, "eigenvalue clustering radius")->capture_default_str();
  };

  auto* dec = app.add_subcommand("decompose", "decompose a matrix read from JSON");
  common(dec);
  dec->add_option("--kind", a.kind, "svd, spectral or jordan")->required();
  dec->add_option("--in", a.in, "input matrix JSON")->required();
  dec->add_option("--out", a.out, "output JSON, '-' for stdout")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "check a {matrix, factorization} file");
  common(ver);
  ver->add_option("--kind", a.kind, "expected kind");
  ver->add_option("--in", a.in, "input JSON")->required();

  auto* self = app.add_subcommand("selftest", "run the property suite");
  common(self);
  self->add_option("--kind", a.kind, "restrict to one kind");
  self->add_option("--seed", a.seed, "master seed")->capture_default_str();
  self->add_option("--trials", a.trials, "trials per cell")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (dec->parsed()) return cmd_decompose(a, out, err);
    if (ver->parsed()) return cmd_verify(a, out);
    return cmd_selftest(a, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace ringdecomp::cli
