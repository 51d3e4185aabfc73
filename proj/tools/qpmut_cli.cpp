// qpmut: mutation of quivers with potential and their representations.
//
// Exit status: 0 on success, 1 when a check fails, 2 on bad input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qpmut/harness.hpp"
#include "qpmut/json_io.hpp"

namespace {

using namespace qpmut;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct Options {
  std::string field = "fp:32003";
  std::optional<int> degree_bound;
  std::uint64_t seed = 1;
  bool strict = false;

  std::string command;
  std::string input = "-";
  std::string qp_file;
  std::string rep_file;
  std::string target_file;
  std::string morphism_file;
  std::string choice_file;
  std::string vertex;
  std::string direction = "plus";
  std::string op = "plus";
  std::string quotient_at;
  std::string seeds;
  bool emit_choice = false;
  bool emit_split = false;
  bool random_choice = false;
  bool no_timing = false;
  bool plant_simple = false;
  int num_vertices = 5;
  int num_arrows = 8;
  int max_dim = 4;
  int morphisms = 1;
  unsigned threads = 0;
};

constexpr int kDefaultDegreeBound = 12;

/// Input problems; reported with exit status 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json(const std::string& path) {
  try {
    return parse_json_text(read_text(path), path == "-" ? "stdin" : path);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

template <class T, class Fn>
T loading(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

Sign parse_sign(const std::string& s) {
  if (s == "plus") return Sign::plus;
  if (s == "minus") return Sign::minus;
  throw InputError("direction must be plus or minus, got '" + s + "'");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

template <ExactField F>
class Runner {
 public:
  Runner(F field, const Options& opt) : field_(std::move(field)), opt_(opt) {}

  int run() {
    const std::string& c = opt_.command;
    if (c == "mutate-quiver") return mutate_quiver_cmd();
    if (c == "mutate-qp") return mutate_qp_cmd();
    if (c == "mutate-rep") return mutate_rep_cmd();
    if (c == "check") return check_cmd();
    if (c == "hom") return hom_cmd();
    if (c == "functor") return functor_cmd();
    if (c == "verify") return verify_cmd();
    throw InputError("unknown command '" + c + "'");
  }

 private:
  QP<F> load_qp(const std::string& path) {
    json j = read_json(path);
    return loading<QP<F>>([&] { return qp_from_json(field_, j, opt_.degree_bound, kDefaultDegreeBound); });
  }

  /// A representation file, taking its QP from --qp or from an embedded "qp".
  Representation<F> load_rep(const std::string& path) {
    json j = read_json(path);
    return loading<Representation<F>>([&] {
      QP<F> qp;
      if (!opt_.qp_file.empty())
        qp = load_qp(opt_.qp_file);
      else if (j.is_object() && j.contains("qp"))
        qp = qp_from_json(field_, j["qp"], opt_.degree_bound, kDefaultDegreeBound, "/qp");
      else
        fail(ErrorKind::ParseError, path + ": no QP; pass --qp or embed one under \"qp\"");
      return representation_from_json(qp, j);
    });
  }

  VertexIndex vertex_of(const Quiver& q) {
    if (opt_.vertex.empty()) throw InputError("--vertex is required");
    if (!q.has_vertex(opt_.vertex)) throw InputError("unknown vertex '" + opt_.vertex + "'");
    return q.vertex(opt_.vertex);
  }

  const std::string& rep_path() {
    if (opt_.rep_file.empty() && opt_.input.empty()) throw InputError("a representation file is required");
    return opt_.rep_file.empty() ? opt_.input : opt_.rep_file;
  }

  int mutate_quiver_cmd() {
    json j = read_json(opt_.input);
    Quiver q = loading<Quiver>([&] { return j.contains("quiver") ? quiver_from_json(j["quiver"], "/quiver") : quiver_from_json(j); });
    VertexIndex k = vertex_of(q);
    Quiver r = loading<Quiver>([&] { return mutate_quiver(q, k); });
    emit(quiver_to_json(r));
    return kOk;
  }

  int mutate_qp_cmd() {
    QP<F> qp = load_qp(opt_.input);
    VertexIndex k = vertex_of(qp.quiver());
    Sign sign = parse_sign(opt_.direction);
    loading<int>([&] {
      validate_mutable(qp.quiver(), k);
      return 0;
    });
    auto mu = mutate(qp, k, sign, opt_.strict);
    json out = qp_to_json(mu.result());
    if (opt_.emit_split) out["split"] = split_to_json(mu.split);
    emit(out);
    return kOk;
  }

  int mutate_rep_cmd() {
    Representation<F> m = load_rep(rep_path());
    VertexIndex k = vertex_of(m.quiver());
    Sign sign = parse_sign(opt_.direction);
    std::optional<SplittingChoice<F>> choice;
    auto t = loading<LocalTriangle<F>>([&] {
      validate_mutable(m.quiver(), k);
      check_representation(m);
      return local_triangle(m, k);
    });
    if (!opt_.choice_file.empty()) {
      json cj = read_json(opt_.choice_file);
      choice = loading<SplittingChoice<F>>([&] { return choice_from_json(t, cj); });
    } else if (opt_.random_choice) {
      std::mt19937_64 rng(opt_.seed);
      choice = random_choice(t, rng);
    }
    auto r = mutate_rep(m, k, sign, choice, opt_.strict);
    json out = {{"qp", qp_to_json(r.result.qp())}};
    json rep = representation_to_json(r.result);
    for (auto& [key, value] : rep.items()) out[key] = value;
    if (opt_.emit_choice) out["choice"] = choice_to_json(r.premutated.choice);
    emit(out);
    return kOk;
  }

  int check_cmd() {
    Representation<F> m = load_rep(rep_path());
    json out = {{"valid", true}};
    try {
      check_representation(m);
      out["nil_index"] = *nil_index(m);
      if (!opt_.vertex.empty()) {
        VertexIndex k = vertex_of(m.quiver());
        validate_mutable(m.quiver(), k);
        auto t = local_triangle(m, k);
        out["simple_free"] = image(t.alpha).contains(kernel(t.beta));
        out["zero_composites"] = (t.gamma * t.beta).is_zero() && (t.alpha * t.gamma).is_zero();
        if (!out["simple_free"].get<bool>() || !out["zero_composites"].get<bool>()) out["valid"] = false;
      }
    } catch (const Error& e) {
      out["valid"] = false;
      out["error"] = e.what();
    }
    emit(out);
    return out["valid"].get<bool>() ? kOk : kCheckFailed;
  }

  int hom_cmd() {
    Representation<F> m = load_rep(rep_path());
    Representation<F> n = opt_.target_file.empty() ? m : load_rep(opt_.target_file);
    loading<int>([&] {
      require_same_qp(m, n);
      return 0;
    });
    const Quiver& q = m.quiver();
    json out;
    if (!opt_.quotient_at.empty()) {
      if (!q.has_vertex(opt_.quotient_at)) throw InputError("unknown vertex '" + opt_.quotient_at + "'");
      auto qh = quotient_hom(m, n, q.vertex(opt_.quotient_at));
      out["dim"] = qh.full.size();
      out["confined_dim"] = qh.confined.size();
      out["quotient_dim"] = qh.quotient_dim;
      json basis = json::array();
      for (const auto& f : qh.full) basis.push_back(morphism_to_json(q, f));
      out["basis"] = std::move(basis);
    } else {
      auto basis = hom_basis(m, n);
      out["dim"] = basis.size();
      json list = json::array();
      for (const auto& f : basis) list.push_back(morphism_to_json(q, f));
      out["basis"] = std::move(list);
    }
    emit(out);
    return kOk;
  }

  int functor_cmd() {
    Representation<F> m = load_rep(rep_path());
    VertexIndex k = vertex_of(m.quiver());
    loading<int>([&] {
      validate_mutable(m.quiver(), k);
      check_representation(m);
      return 0;
    });
    const std::string& op = opt_.op;
    if (op == "psi") {
      auto id = prime_identification(m, k);
      auto w = psi(m, id);
      json prime = representation_to_json(id.prime);
      emit({{"prime", std::move(prime)}, {"psi", morphism_to_json(m.quiver(), w.psi)}});
      return kOk;
    }
    Representation<F> n = opt_.target_file.empty() ? m : load_rep(opt_.target_file);
    RepMorphism<F> f = RepMorphism<F>::identity(m);
    if (!opt_.morphism_file.empty()) {
      json fj = read_json(opt_.morphism_file);
      f = loading<RepMorphism<F>>([&] {
        require_same_qp(m, n);
        auto g = morphism_from_json(m, n, fj);
        require_morphism(m, n, g, "input is not a morphism");
        return g;
      });
    } else if (!opt_.target_file.empty()) {
      throw InputError("--morphism is required with --target");
    }
    if (op == "plus" || op == "minus") {
      auto r = mutate_morphism(m, n, f, k, parse_sign(op));
      json out = {{"qp", qp_to_json(r.source.result.qp())},
                  {"source", representation_to_json(r.source.result)},
                  {"target", representation_to_json(r.target.result)},
                  {"morphism", morphism_to_json(r.source.result.quiver(), r.morphism)}};
      emit(out);
      return kOk;
    }
    if (op == "naturality") {
      auto d = naturality_defect(m, n, f, k);
      bool confined = d.is_confined_to(k);
      emit({{"confined", confined}, {"defect", morphism_to_json(m.quiver(), d)}});
      return confined ? kOk : kCheckFailed;
    }
    throw InputError("--op must be plus, minus, psi or naturality");
  }

  int verify_cmd() {
    std::uint64_t first = opt_.seed, last = opt_.seed;
    if (!opt_.seeds.empty()) {
      auto dots = opt_.seeds.find("..");
      try {
        if (dots == std::string::npos) {
          first = last = std::stoull(opt_.seeds);
        } else {
          first = std::stoull(opt_.seeds.substr(0, dots));
          last = std::stoull(opt_.seeds.substr(dots + 2));
        }
      } catch (const std::exception&) {
        throw InputError("--seeds expects N or A..B, got '" + opt_.seeds + "'");
      }
      if (last < first) throw InputError("--seeds range is empty");
    }
    InstanceSpec spec;
    spec.num_vertices = opt_.num_vertices;
    spec.num_arrows = opt_.num_arrows;
    spec.max_dim = opt_.max_dim;
    spec.degree_bound = opt_.degree_bound.value_or(0);
    spec.plant_simple = opt_.plant_simple;
    loading<int>([&] {
      spec.validate();
      return 0;
    });
    CertOptions copt;
    copt.strict = opt_.strict;
    copt.morphisms = opt_.morphisms;
    auto reports = certify_batch(field_, spec, first, last, copt, opt_.threads);
    bool ok = true;
    for (const auto& r : reports) {
      std::cout << report_to_json(r, !opt_.no_timing).dump() << "\n";
      ok = ok && r.passed();
    }
    return ok ? kOk : kCheckFailed;
  }

  F field_;
  const Options& opt_;
};

int dispatch(const Options& opt) {
  const std::string& f = opt.field;
  if (f == "rational") return Runner<RationalField>(RationalField{}, opt).run();
  if (f == "fp") return Runner<PrimeField>(PrimeField{}, opt).run();
  if (f.rfind("fp:", 0) == 0) {
    unsigned long p = 0;
    try {
      std::size_t used = 0;
      p = std::stoul(f.substr(3), &used);
      if (used != f.size() - 3) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InputError("bad field '" + f + "'; use fp:P or rational");
    }
    PrimeField field = loading<PrimeField>([&] { return PrimeField(static_cast<std::uint32_t>(p)); });
    return Runner<PrimeField>(field, opt).run();
  }
  throw InputError("bad field '" + f + "'; use fp:P or rational");
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* env = std::getenv("QPMUT_FIELD")) opt.field = env;

  CLI::App app{"Mutation of quivers with potential and of their representations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", opt.field, "fp:P or rational (default from QPMUT_FIELD, else fp:32003)");
  int bound = kDefaultDegreeBound;
  auto* bound_opt = app.add_option("--degree-bound", bound, "truncation degree; overrides the input's own bound");
  app.add_option("--seed", opt.seed, "seed for random choices, or the single seed for verify");
  app.add_flag("--strict-truncation", opt.strict, "fail when a splitting step truncates a nonzero term");

  auto* mq = app.add_subcommand("mutate-quiver", "mutate a quiver (or the quiver of a QP)");
  mq->add_option("input", opt.input, "quiver or QP JSON file, - for stdin");
  mq->add_option("--vertex", opt.vertex, "mutation vertex id")->required();

  auto* mqp = app.add_subcommand("mutate-qp", "mutate a QP and reduce it");
  mqp->add_option("input", opt.input, "QP JSON file, - for stdin");
  mqp->add_option("--vertex", opt.vertex, "mutation vertex id")->required();
  mqp->add_option("--direction", opt.direction, "plus or minus");
  mqp->add_flag("--emit-split", opt.emit_split, "include the split right equivalence");

  auto* mr = app.add_subcommand("mutate-rep", "mutate a representation");
  mr->add_option("input", opt.input, "representation JSON file, - for stdin");
  mr->add_option("--rep", opt.rep_file, "representation JSON file");
  mr->add_option("--qp", opt.qp_file, "QP JSON file when the representation does not embed one");
  mr->add_option("--vertex", opt.vertex, "mutation vertex id")->required();
  mr->add_option("--direction", opt.direction, "plus or minus");
  mr->add_flag("--emit-choice", opt.emit_choice, "include the splitting choice");
  mr->add_option("--choice", opt.choice_file, "splitting choice JSON to reuse");
  mr->add_flag("--random-choice", opt.random_choice, "draw the splitting choice from --seed");

  auto* ck = app.add_subcommand("check", "check relations, nilpotency and, with --vertex, the triangle at k");
  ck->add_option("input", opt.input, "representation JSON file, - for stdin");
  ck->add_option("--rep", opt.rep_file, "representation JSON file");
  ck->add_option("--qp", opt.qp_file, "QP JSON file");
  ck->add_option("--vertex", opt.vertex, "vertex whose local triangle to check");

  auto* hm = app.add_subcommand("hom", "basis of Hom(M, N)");
  hm->add_option("input", opt.input, "source representation JSON file, - for stdin");
  hm->add_option("--rep", opt.rep_file, "source representation JSON file");
  hm->add_option("--target", opt.target_file, "target representation (default: the source)");
  hm->add_option("--qp", opt.qp_file, "QP JSON file");
  hm->add_option("--quotient-at", opt.quotient_at, "also count Hom modulo maps confined to this vertex");

  auto* fn = app.add_subcommand("functor", "mutation of morphisms, psi and the naturality defect");
  fn->add_option("input", opt.input, "source representation JSON file, - for stdin");
  fn->add_option("--rep", opt.rep_file, "source representation JSON file");
  fn->add_option("--target", opt.target_file, "target representation (default: the source)");
  fn->add_option("--morphism", opt.morphism_file, "morphism JSON (default: the identity)");
  fn->add_option("--qp", opt.qp_file, "QP JSON file");
  fn->add_option("--vertex", opt.vertex, "mutation vertex id")->required();
  fn->add_option("--op", opt.op, "plus, minus, psi or naturality");

  auto* vf = app.add_subcommand("verify", "generate instances and certify them, one JSON report per line");
  vf->add_option("--seeds", opt.seeds, "N or A..B");
  vf->add_option("--vertices", opt.num_vertices, "largest vertex count (1..6)");
  vf->add_option("--arrows", opt.num_arrows, "largest arrow count (0..10)");
  vf->add_option("--max-dim", opt.max_dim, "largest dimension per vertex (0..5)");
  vf->add_option("--morphisms", opt.morphisms, "random morphisms per naturality check");
  vf->add_option("--threads", opt.threads, "worker threads (default: all cores)");
  vf->add_flag("--plant-simple", opt.plant_simple, "add the simple at k to each representation");
  vf->add_flag("--no-timing", opt.no_timing, "omit runtimes for byte-stable reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }
  for (auto* sub : app.get_subcommands()) opt.command = sub->get_name();
  if (opt.command == "mutate-rep" || opt.command == "check" || opt.command == "hom" || opt.command == "functor")
    if (opt.input == "-" && !opt.rep_file.empty()) opt.input.clear();
  if (bound_opt->count() > 0) opt.degree_bound = bound;

  try {
    return dispatch(opt);
  } catch (const InputError& e) {
    std::cerr << "qpmut: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << "qpmut: " << e.what() << "\n";
    return kCheckFailed;
  }
}
