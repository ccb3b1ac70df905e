// grasscode: construct Grassmann/Schubert codes, run k-threshold closures,
// encode iteratively, and verify the structural identities behind them.
//
// Subcommands: field, grassmann, schubert, encode, closure, bounds, verify.
// All outputs are deterministic for a fixed seed and configuration.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "grasscode/gf.hpp"
#include "grasscode/grassmann.hpp"
#include "grasscode/linear_code.hpp"
#include "grasscode/matrix.hpp"
#include "grasscode/schubert.hpp"
#include "grasscode/tanner.hpp"
#include "grasscode/verify.hpp"

namespace fs = std::filesystem;
using namespace grasscode;

namespace {

struct FieldFlags {
  int q = 0;
  int p = 0;
  int e = 1;

  FieldPtr resolve() const {
    if (q > 0) return make_field_from_q(q);
    if (p > 0) return make_field(p, e);
    throw CLI::ValidationError("field", "pass --q or --p (with optional --e)");
  }
};

void add_field_flags(CLI::App* cmd, FieldFlags& flags) {
  cmd->add_option("--q", flags.q, "field size (prime power)");
  cmd->add_option("--p", flags.p, "field characteristic");
  cmd->add_option("--e", flags.e, "extension degree (with --p)");
}

// "a1,a2;b1,b2" -> generator tuples; the ideal is their downward closure.
std::vector<IndexTuple> parse_generators(const std::string& text) {
  std::vector<IndexTuple> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    IndexTuple t;
    std::stringstream entries(group);
    std::string entry;
    while (std::getline(entries, entry, ',')) t.entries.push_back(std::stoi(entry));
    out.push_back(std::move(t));
  }
  if (out.empty()) throw CLI::ValidationError("--ideal", "no tuples given");
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << content;
}

std::string geometry_text(const Grassmannian& g, const GeometrySet& x) {
  std::ostringstream os;
  os << "geometry origin=" << x.origin << " l=" << g.l() << " m=" << g.m()
     << " field=" << g.field()->to_string() << " count=" << x.points.size()
     << '\n';
  for (int p : x.points) {
    os << "point " << p << '\n';
    os << g.points()[static_cast<std::size_t>(p)].basis.to_text();
  }
  return os.str();
}

std::string lines_text(const Grassmannian& g, const GeometrySet& x) {
  std::ostringstream os;
  os << "lines origin=" << x.origin << " l=" << g.l() << " m=" << g.m()
     << " field=" << g.field()->to_string() << " count=" << x.lines.size()
     << '\n';
  for (int lid : x.lines) {
    const GrassLine& line = g.lines()[static_cast<std::size_t>(lid)];
    os << "line " << lid << " points:";
    for (int p : line.points) os << ' ' << p;
    os << '\n';
    os << line.z.to_text();
    os << line.z_prime.to_text();
  }
  return os.str();
}

std::string word_text(const Word& w) {
  std::ostringstream os;
  for (const auto& [label, v] : w) os << label << '=' << v << '\n';
  return os.str();
}

Word read_word_file(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  Word w;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("malformed message line: " + line);
    w[std::stoll(line.substr(0, eq))] = std::stoi(line.substr(eq + 1));
  }
  return w;
}

DownSet resolve_ideal(const std::string& text, int l, int m) {
  const DownSet s = downward_closure(l, m, parse_generators(text));
  std::cout << "ideal closed to " << s.to_string() << " (" << s.members.size()
            << " tuples)\n";
  return s;
}

int cmd_field(const FieldFlags& flags, const std::string& out) {
  const FieldPtr f = flags.resolve();
  std::cout << f->to_string() << '\n'
            << "q=" << f->q() << " p=" << f->p() << " e=" << f->extension_degree()
            << " modulus=" << f->modulus() << '\n';
  if (!out.empty()) write_file(out, f->to_string() + "\n");
  return 0;
}

int cmd_grassmann(const FieldFlags& flags, int l, int m, const std::string& out) {
  const FieldPtr f = flags.resolve();
  const Grassmannian g(f, l, m);
  const GeometrySet x = full_geometry(g);
  const LinearCode code = grassmann_code(g);
  const GrassmannParameters params = grassmann_parameters(l, m, f->q());

  fs::create_directories(out);
  write_file(fs::path(out) / "points.txt", geometry_text(g, x));
  write_file(fs::path(out) / "lines.txt", lines_text(g, x));
  write_file(fs::path(out) / "graph.txt", incidence_graph(x).to_text());
  write_file(fs::path(out) / "code.txt", code.to_text());
  try {
    write_file(fs::path(out) / "weights.txt", code.weight_distribution_text());
  } catch (const std::invalid_argument&) {
    // message space over the enumeration cap; skip the distribution
  }

  std::ostringstream ps;
  ps << "l=" << l << "\nm=" << m << "\nfield=" << f->to_string()
     << "\nlength=" << params.length << "\ndimension=" << params.dimension
     << "\nmin_distance=" << params.min_distance
     << "\nline_count=" << params.line_count
     << "\nlines_per_point=" << params.lines_per_point << '\n';
  write_file(fs::path(out) / "params.txt", ps.str());

  std::cout << "G(" << l << "," << m << ") over GF(" << f->q() << "): "
            << x.points.size() << " points, " << x.lines.size() << " lines, ["
            << params.length << "," << params.dimension << ","
            << params.min_distance << "] code written to " << out << '\n';
  return 0;
}

int cmd_schubert(const FieldFlags& flags, int l, int m, const std::string& ideal,
                 const std::string& out) {
  const FieldPtr f = flags.resolve();
  const DownSet s = resolve_ideal(ideal, l, m);
  const Grassmannian g(f, l, m);
  const SchubertInstance inst = make_schubert_instance(g, s, grassmann_code(g));

  fs::create_directories(out);
  write_file(fs::path(out) / "points.txt", geometry_text(g, inst.geometry));
  write_file(fs::path(out) / "lines.txt", lines_text(g, inst.geometry));
  write_file(fs::path(out) / "graph.txt",
             incidence_graph(inst.geometry).to_text());
  write_file(fs::path(out) / "code.txt", inst.code.to_text());
  try {
    write_file(fs::path(out) / "weights.txt",
               inst.code.weight_distribution_text());
  } catch (const std::invalid_argument&) {
  }

  std::ostringstream js;
  for (int p : inst.j_points) js << p << '\n';
  write_file(fs::path(out) / "jset.txt", js.str());

  std::ostringstream ps;
  ps << "l=" << l << "\nm=" << m << "\nfield=" << f->to_string()
     << "\nideal=" << s.to_string() << "\nlength=" << inst.code.length()
     << "\ndimension=" << inst.code.dim();
  if (!s.members.empty())
    ps << "\nmin_distance_formula=" << min_distance_formula(s, f->q());
  ps << '\n';
  write_file(fs::path(out) / "params.txt", ps.str());

  std::cout << "Omega_S: " << inst.geometry.points.size() << " points, "
            << inst.geometry.lines.size() << " lines, [" << inst.code.length()
            << "," << inst.code.dim() << "] code written to " << out << '\n';
  return 0;
}

int cmd_encode(const FieldFlags& flags, int l, int m, const std::string& ideal,
               const std::string& message_file, bool random_message,
               unsigned long long seed, const std::string& out) {
  const FieldPtr f = flags.resolve();
  const DownSet s = resolve_ideal(ideal, l, m);
  if (s.members.empty())
    throw std::runtime_error("cannot encode over the empty union");
  const Grassmannian g(f, l, m);
  const SchubertInstance inst = make_schubert_instance(g, s, grassmann_code(g));
  const TannerSpec spec = schubert_tanner_spec(g, inst);

  Word msg;
  if (random_message) {
    std::mt19937_64 rng(seed);
    for (int p : inst.j_points)
      msg[p] = static_cast<int>(rng() % static_cast<unsigned>(f->q()));
  } else {
    if (message_file.empty())
      throw std::runtime_error("pass --message FILE or --random");
    msg = read_word_file(message_file);
    for (const auto& [label, v] : msg) {
      if (std::find(inst.j_points.begin(), inst.j_points.end(), label) ==
          inst.j_points.end())
        throw std::runtime_error("message label " + std::to_string(label) +
                                 " is not in J_S");
      if (v < 0 || v >= f->q())
        throw std::runtime_error("message value out of field range");
    }
    if (msg.size() != inst.j_points.size())
      throw std::runtime_error("message must cover all of J_S (" +
                               std::to_string(inst.j_points.size()) +
                               " labels)");
  }

  const EncodeResult res = encode_schubert(inst, spec, msg);

  // cross-check against generator-matrix lengthening
  std::vector<int> x;
  if (inst.code.match_on(msg, &x) != SolveStatus::unique)
    throw std::runtime_error("message is not uniquely extendable");
  const std::vector<int> oracle = inst.code.encode(x);
  bool match = true;
  std::size_t i = 0;
  for (Label lab : inst.code.coords()) {
    if (res.word.at(lab) != oracle[i]) match = false;
    ++i;
  }

  fs::create_directories(out);
  write_file(fs::path(out) / "codeword.txt", word_text(res.word));
  std::ostringstream tr;
  for (Label u : res.fired) tr << u << '\n';
  write_file(fs::path(out) / "trace.txt", tr.str());

  std::cout << "encoded " << msg.size() << " message symbols to "
            << res.word.size() << " positions; " << res.fired.size()
            << " constraints fired; crosscheck="
            << (match ? "pass" : "fail") << '\n';
  return match ? 0 : 1;
}

int cmd_closure(const std::string& graph_file, int k, const std::string& set_text,
                const std::string& out) {
  std::ifstream is(graph_file);
  if (!is) throw std::runtime_error("cannot read " + graph_file);
  const BipartiteGraph g = BipartiteGraph::from_text(is);

  std::set<Label> seed;
  if (!set_text.empty()) {
    std::stringstream ss(set_text);
    std::string entry;
    while (std::getline(ss, entry, ',')) seed.insert(std::stoll(entry));
  }

  ClosureState state;
  const std::set<Label> closed = k_closure(g, k, seed, &state);

  std::ostringstream os;
  os << "closure size " << closed.size() << " of " << g.v1.size() << '\n';
  os << "closure:";
  for (Label v : closed) os << ' ' << v;
  os << '\n' << "fired:";
  for (Label u : state.fired) os << ' ' << u;
  os << '\n';
  std::cout << os.str();
  if (!out.empty()) write_file(out, os.str());
  return 0;
}

int cmd_bounds(const FieldFlags& flags, int l, int m) {
  const FieldPtr f = flags.resolve();
  const GrassmannParameters p = grassmann_parameters(l, m, f->q());
  std::cout << "C(" << l << "," << m << ") over GF(" << f->q() << "): ["
            << p.length << "," << p.dimension << "," << p.min_distance << "]\n"
            << "lines=" << p.line_count << " lines_per_point="
            << p.lines_per_point << '\n'
            << "weight moduli: " << int_pow(f->q(), l) << " and "
            << int_pow(f->q(), m - l) << '\n';
  if (2 * l <= m) {
    const EisfeldBounds b = eisfeld_bounds(l, m, f->q());
    std::cout << "eigenvalues: theta0=" << b.theta0 << " theta1=" << b.theta1
              << " theta_l=" << b.theta_ell << '\n'
              << "support bounds: " << b.lower << " <= wt <= " << b.upper_num
              << "/" << b.upper_den << '\n';
  } else {
    std::cout << "eigenvalue bounds need 2l <= m\n";
  }
  return 0;
}

int cmd_verify(const FieldFlags& flags, int l, int m, const std::string& ideal,
               bool all_ideals, int messages, unsigned long long seed, int jobs,
               const std::string& out, bool corrupt) {
  VerifyOptions opt;
  opt.field = flags.resolve();
  opt.l = l;
  opt.m = m;
  opt.messages_per_ideal = messages;
  opt.seed = seed;
  opt.jobs = jobs;
  opt.corrupt_generator = corrupt;
  if (all_ideals) {
    opt.ideals = all_order_ideals(l, m);
  } else if (!ideal.empty()) {
    opt.ideals = {resolve_ideal(ideal, l, m)};
  } else {
    throw CLI::ValidationError("verify", "pass --ideal or --all-ideals");
  }

  const VerifySuite suite(opt);
  const std::vector<CheckResult> results = suite.run_all();

  int failed = 0;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& r : results) {
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " [" << r.instance
              << "] " << r.detail << '\n';
    nlohmann::ordered_json item;
    item["check"] = r.check;
    item["statement"] = r.statement;
    item["instance"] = r.instance;
    item["pass"] = r.pass;
    item["detail"] = r.detail;
    checks.push_back(item);
  }
  std::cout << results.size() - failed << "/" << results.size()
            << " checks passed\n";

  if (!out.empty()) {
    nlohmann::ordered_json report;
    report["tool"] = "grasscode verify";
    report["field"] = opt.field->to_string();
    report["l"] = l;
    report["m"] = m;
    report["seed"] = seed;
    report["messages_per_ideal"] = messages;
    report["ideals"] = opt.ideals.size();
    report["checks"] = checks;
    report["passed"] = results.size() - failed;
    report["failed"] = failed;
    write_file(out, report.dump(2) + "\n");
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmann and Schubert union codes as Tanner codes"};
  app.require_subcommand(1);

  FieldFlags field_flags;
  int l = 2;
  int m = 4;
  std::string ideal;
  std::string out;
  std::string message_file;
  std::string graph_file;
  std::string set_text;
  bool all_ideals = false;
  bool random_message = false;
  bool corrupt = false;
  int k = 2;
  int messages = 100;
  int jobs = 1;
  unsigned long long seed = 0;

  CLI::App* c_field = app.add_subcommand("field", "construct a finite field");
  add_field_flags(c_field, field_flags);
  c_field->add_option("--out", out, "write the field spec to a file");

  CLI::App* c_grass = app.add_subcommand("grassmann",
                                         "enumerate G(l,m) and its code");
  add_field_flags(c_grass, field_flags);
  c_grass->add_option("--l", l, "subspace dimension")->required();
  c_grass->add_option("--m", m, "ambient dimension")->required();
  c_grass->add_option("--out", out, "output directory")->required();

  CLI::App* c_schub = app.add_subcommand("schubert",
                                         "construct a Schubert union code");
  add_field_flags(c_schub, field_flags);
  c_schub->add_option("--l", l)->required();
  c_schub->add_option("--m", m)->required();
  c_schub->add_option("--ideal", ideal,
                      "generator tuples a1,a2[;b1,b2...], closed downward")
      ->required();
  c_schub->add_option("--out", out, "output directory")->required();

  CLI::App* c_encode = app.add_subcommand("encode",
                                          "iteratively encode a message on J_S");
  add_field_flags(c_encode, field_flags);
  c_encode->add_option("--l", l)->required();
  c_encode->add_option("--m", m)->required();
  c_encode->add_option("--ideal", ideal)->required();
  c_encode->add_option("--message", message_file, "label=value lines on J_S");
  c_encode->add_flag("--random", random_message, "use a seeded random message");
  c_encode->add_option("--seed", seed, "seed for --random");
  c_encode->add_option("--out", out, "output directory")->required();

  CLI::App* c_closure = app.add_subcommand("closure",
                                           "run the k-threshold closure");
  c_closure->add_option("--graph", graph_file, "graph file")->required();
  c_closure->add_option("--k", k, "threshold")->required();
  c_closure->add_option("--set", set_text, "comma-separated seed vertices");
  c_closure->add_option("--out", out, "write the closure to a file");

  CLI::App* c_bounds = app.add_subcommand("bounds",
                                          "print code parameters and bounds");
  add_field_flags(c_bounds, field_flags);
  c_bounds->add_option("--l", l)->required();
  c_bounds->add_option("--m", m)->required();

  CLI::App* c_verify = app.add_subcommand("verify",
                                          "run the structural check suite");
  add_field_flags(c_verify, field_flags);
  c_verify->add_option("--l", l)->required();
  c_verify->add_option("--m", m)->required();
  c_verify->add_option("--ideal", ideal, "verify a single ideal");
  c_verify->add_flag("--all-ideals", all_ideals, "sweep every order ideal");
  c_verify->add_option("--messages", messages, "random messages per ideal");
  c_verify->add_option("--seed", seed, "seed for randomized checks");
  c_verify->add_option("--jobs", jobs, "parallel worker threads");
  c_verify->add_option("--out", out, "write a JSON report");
  c_verify->add_flag("--corrupt", corrupt,
                     "negative control: corrupt the generator first");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_field->parsed()) return cmd_field(field_flags, out);
    if (c_grass->parsed()) return cmd_grassmann(field_flags, l, m, out);
    if (c_schub->parsed()) return cmd_schubert(field_flags, l, m, ideal, out);
    if (c_encode->parsed())
      return cmd_encode(field_flags, l, m, ideal, message_file, random_message,
                        seed, out);
    if (c_closure->parsed()) return cmd_closure(graph_file, k, set_text, out);
    if (c_bounds->parsed()) return cmd_bounds(field_flags, l, m);
    if (c_verify->parsed())
      return cmd_verify(field_flags, l, m, ideal, all_ideals, messages, seed,
                        jobs, out, corrupt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
