#pragma once

// Batch verification of the structural statements behind the library: every
// check recomputes both sides of an identity (construction vs. independent
// formula or oracle) on a concrete desk-scale instance and reports pass or
// fail with a witness.  The CLI drives this and renders the results.

#include <atomic>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "grasscode/schubert.hpp"

namespace grasscode {

struct CheckResult {
  std::string check;      // stable kebab-case identifier
  std::string statement;  // what is being verified, as a formula
  std::string instance;   // concrete parameters
  bool pass = false;
  std::string detail;     // measured values; witness on failure
};

struct VerifyOptions {
  FieldPtr field;
  int l = 2;
  int m = 4;
  std::vector<DownSet> ideals;
  int messages_per_ideal = 100;
  unsigned long long seed = 0;
  int jobs = 1;
  bool corrupt_generator = false;  // negative control for the harness itself
};

namespace verifydetail {

inline std::string instance_string(const VerifyOptions& opt, const DownSet* s) {
  std::ostringstream os;
  os << "q=" << opt.field->q() << " l=" << opt.l << " m=" << opt.m;
  if (s) os << " S=" << s->to_string();
  return os.str();
}

inline long long word_weight(const std::vector<int>& w) {
  long long r = 0;
  for (int v : w)
    if (v != 0) ++r;
  return r;
}

inline std::string format_message(const std::vector<int>& msg) {
  std::string s;
  for (std::size_t i = 0; i < msg.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(msg[i]);
  }
  return s;
}

}  // namespace verifydetail

class VerifySuite {
 public:
  explicit VerifySuite(VerifyOptions opt)
      : opt_(std::move(opt)), geom_(opt_.field, opt_.l, opt_.m),
        code_(grassmann_code(geom_)) {
    if (opt_.corrupt_generator) {
      Matrix g = code_.gen();
      g.at(0, 1) = opt_.field->add(g.at(0, 1), 1);
      code_ = LinearCode::make(opt_.field, code_.coords(), g);
    }
  }

  const Grassmannian& geometry() const { return geom_; }
  const LinearCode& code() const { return code_; }

  // Assembles the full task list and runs it on opt_.jobs threads.  Results
  // keep task-list order, so reports are identical for any job count.
  std::vector<CheckResult> run_all() const {
    struct Task {
      std::string check;
      std::string instance;
      std::function<CheckResult()> run;
    };
    std::vector<Task> tasks;
    const auto inst_of = [this](const DownSet* s) {
      return verifydetail::instance_string(opt_, s);
    };

    tasks.push_back({"grassmann-parameters", inst_of(nullptr),
                     [this] { return check_parameters(); }});
    for (const DownSet& s : opt_.ideals) {
      tasks.push_back({"tanner-equality", inst_of(&s),
                       [this, &s] { return check_tanner_equality(s); }});
      tasks.push_back({"apartment-closure", inst_of(&s),
                       [this, &s] { return check_apartment_closure(s); }});
      if (!s.members.empty()) {
        tasks.push_back({"encoder-equivalence", inst_of(&s),
                         [this, &s] { return check_encoder_equivalence(s); }});
        tasks.push_back({"encoder-workload", inst_of(&s),
                         [this, &s] { return check_encoder_workload(s); }});
        tasks.push_back({"min-distance-formula", inst_of(&s),
                         [this, &s] { return check_min_distance(s); }});
      }
      tasks.push_back({"closure-order-independence", inst_of(&s),
                       [this, &s] { return check_order_independence(s); }});
    }
    for (const DownSet& s : opt_.ideals)
      if (s.members.size() > 1)
        tasks.push_back({"dual-structure", inst_of(&s),
                         [this, &s] { return check_dual_structure(s); }});
    tasks.push_back({"weight-divisibility", inst_of(nullptr),
                     [this] { return check_divisibility(); }});
    tasks.push_back({"line-clique-intersections", inst_of(nullptr),
                     [this] { return check_intersections(); }});
    if (2 * opt_.l <= opt_.m)  // the eigenvalue bounds need 2l <= m
      tasks.push_back({"eisfeld-bounds", inst_of(nullptr),
                       [this] { return check_eisfeld(); }});
    tasks.push_back({"cyclic-tanner", "n=7 q=2",
                     [this] { return check_cyclic_tanner(); }});

    std::vector<CheckResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) break;
        try {
          results[i] = tasks[i].run();
        } catch (const std::exception& e) {
          results[i].check = tasks[i].check;
          results[i].instance = tasks[i].instance;
          results[i].pass = false;
          results[i].detail = std::string("exception: ") + e.what();
        }
      }
    };
    const int jobs = std::max(1, opt_.jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    return results;
  }

  CheckResult check_parameters() const {
    CheckResult r{"grassmann-parameters",
                  "C(l,m) is a [[m,l]_q, C(m,l), q^{l(m-l)}] code",
                  verifydetail::instance_string(opt_, nullptr), false, ""};
    const GrassmannParameters p = grassmann_parameters(opt_.l, opt_.m, opt_.field->q());
    const auto d = code_.min_distance_bruteforce();
    std::ostringstream os;
    os << "length=" << code_.length() << " dim=" << code_.dim()
       << " d=" << (d ? std::to_string(*d) : "none");
    r.detail = os.str();
    r.pass = code_.length() == p.length && code_.dim() == p.dimension && d &&
             *d == p.min_distance;
    if (!r.pass)
      r.detail += " expected length=" + std::to_string(p.length) +
                  " dim=" + std::to_string(p.dimension) +
                  " d=" + std::to_string(p.min_distance);
    return r;
  }

  CheckResult check_tanner_equality(const DownSet& s) const {
    CheckResult r{"tanner-equality",
                  "maximal Tanner code on Gamma_{Omega_S} = projected code",
                  verifydetail::instance_string(opt_, &s), false, ""};
    const SchubertInstance inst = make_schubert_instance(geom_, s, code_);
    const TannerSpec spec = schubert_tanner_spec(geom_, inst);
    const LinearCode tanner = maximal_tanner_code(spec);
    r.pass = tanner == inst.code;
    r.detail = "dim=" + std::to_string(inst.code.dim()) +
               " length=" + std::to_string(inst.code.length());
    if (!r.pass)
      r.detail += " tanner-dim=" + std::to_string(tanner.dim());
    return r;
  }

  CheckResult check_apartment_closure(const DownSet& s) const {
    CheckResult r{"apartment-closure", "cl_2(J_S) in Gamma_{Omega_S} = Omega_S",
                  verifydetail::instance_string(opt_, &s), false, ""};
    const SchubertInstance inst = make_schubert_instance(geom_, s, code_);
    r.pass = closure_of_apartment(inst);
    r.detail = "points=" + std::to_string(inst.geometry.points.size()) +
               " apartment=" + std::to_string(inst.j_points.size());
    return r;
  }

  CheckResult check_encoder_equivalence(const DownSet& s) const {
    CheckResult r{"encoder-equivalence",
                  "iterative encoding = generator-matrix lengthening",
                  verifydetail::instance_string(opt_, &s), false, ""};
    const SchubertInstance inst = make_schubert_instance(geom_, s, code_);
    const TannerSpec spec = schubert_tanner_spec(geom_, inst);
    std::mt19937_64 rng(opt_.seed * 7919 + inst.code.length());
    for (int trial = 0; trial < opt_.messages_per_ideal; ++trial) {
      Word msg;
      for (int p : inst.j_points)
        msg[p] = static_cast<int>(rng() % static_cast<unsigned>(opt_.field->q()));
      const EncodeResult res = encode_schubert(inst, spec, msg);
      std::vector<int> x;
      if (inst.code.match_on(msg, &x) != SolveStatus::unique) {
        r.detail = "message is not uniquely extendable (trial " +
                   std::to_string(trial) + ")";
        return r;
      }
      const std::vector<int> oracle = inst.code.encode(x);
      std::size_t i = 0;
      for (Label l : inst.code.coords()) {
        if (res.word.at(l) != oracle[i]) {
          r.detail = "mismatch at point " + std::to_string(l) + " (trial " +
                     std::to_string(trial) + ")";
          return r;
        }
        ++i;
      }
    }
    r.pass = true;
    r.detail = std::to_string(opt_.messages_per_ideal) + " messages";
    return r;
  }

  CheckResult check_encoder_workload(const DownSet& s) const {
    CheckResult r{"encoder-workload",
                  "every run fires each constraint at most once",
                  verifydetail::instance_string(opt_, &s), false, ""};
    const SchubertInstance inst = make_schubert_instance(geom_, s, code_);
    const TannerSpec spec = schubert_tanner_spec(geom_, inst);
    std::mt19937_64 rng(opt_.seed * 104729 + inst.code.length());
    long long max_firings = 0;
    for (int trial = 0; trial < opt_.messages_per_ideal; ++trial) {
      Word msg;
      for (int p : inst.j_points)
        msg[p] = static_cast<int>(rng() % static_cast<unsigned>(opt_.field->q()));
      const EncodeResult res = encode_schubert(inst, spec, msg);
      const std::set<Label> unique(res.fired.begin(), res.fired.end());
      if (res.fired.size() > spec.graph.v2.size() ||
          unique.size() != res.fired.size()) {
        r.detail = "constraint fired twice (trial " + std::to_string(trial) + ")";
        return r;
      }
      max_firings = std::max(max_firings,
                             static_cast<long long>(res.fired.size()));
    }
    r.pass = true;
    r.detail = "max firings " + std::to_string(max_firings) + " of " +
               std::to_string(spec.graph.v2.size()) + " constraints";
    return r;
  }

  CheckResult check_min_distance(const DownSet& s) const {
    CheckResult r{"min-distance-formula",
                  "brute-force distance = min over maximal alpha of q^{delta_alpha}",
                  verifydetail::instance_string(opt_, &s), false, ""};
    const SchubertInstance inst = make_schubert_instance(geom_, s, code_);
    const long long formula = min_distance_formula(s, opt_.field->q());
    const auto brute = inst.code.min_distance_bruteforce();
    r.pass = brute && *brute == formula;
    r.detail = "formula=" + std::to_string(formula) +
               " brute=" + (brute ? std::to_string(*brute) : "none");
    return r;
  }

  CheckResult check_dual_structure(const DownSet& s) const {
    CheckResult r{"dual-structure",
                  "weight-3 line triples span the dual; no dual word of weight <= 2",
                  verifydetail::instance_string(opt_, &s), false, ""};
    const SchubertInstance inst = make_schubert_instance(geom_, s, code_);
    const DualReport rep = dual_checks(geom_, inst);
    r.pass = rep.pass();
    r.detail = "triple-span=" + std::to_string(rep.triple_span_dim) +
               " expected=" + std::to_string(rep.expected_dual_dim);
    if (!rep.no_weight_le2_dual_word) r.detail += " low-weight-dual-word";
    if (!rep.triples_are_dual_words) r.detail += " triple-not-orthogonal";
    return r;
  }

  CheckResult check_order_independence(const DownSet& s) const {
    CheckResult r{"closure-order-independence",
                  "closure fixed point is independent of the firing order",
                  verifydetail::instance_string(opt_, &s), false, ""};
    const SchubertInstance inst = make_schubert_instance(geom_, s, code_);
    const BipartiteGraph gamma = incidence_graph(inst.geometry);
    const std::set<Label> seed(inst.j_points.begin(), inst.j_points.end());
    const std::set<Label> reference = k_closure(gamma, 2, seed);
    std::mt19937_64 rng(opt_.seed * 130363 + inst.geometry.points.size());
    const int shuffles = 100;
    for (int trial = 0; trial < shuffles; ++trial) {
      std::vector<Label> order = gamma.v2;
      std::shuffle(order.begin(), order.end(), rng);
      if (k_closure_ordered(gamma, 2, seed, order) != reference) {
        r.detail = "shuffle " + std::to_string(trial) + " changed the closure";
        return r;
      }
    }
    r.pass = true;
    r.detail = std::to_string(shuffles) + " shuffles";
    return r;
  }

  CheckResult check_divisibility() const {
    CheckResult r{"weight-divisibility",
                  "q^l and q^{m-l} divide every nonzero codeword weight",
                  verifydetail::instance_string(opt_, nullptr), false, ""};
    const long long ql = int_pow(opt_.field->q(), opt_.l);
    const long long qml = int_pow(opt_.field->q(), opt_.m - opt_.l);
    bool ok = true;
    std::string witness;
    for_each_message(*opt_.field, code_.dim(), [&](const std::vector<int>& msg) {
      if (!ok) return;
      const long long w = verifydetail::word_weight(code_.encode(msg));
      if (w == 0) return;
      if (w % ql != 0 || w % qml != 0) {
        ok = false;
        witness = "message " + verifydetail::format_message(msg) + " weight " +
                  std::to_string(w);
      }
    });
    r.pass = ok;
    r.detail = ok ? "moduli " + std::to_string(ql) + "," + std::to_string(qml)
                  : witness;
    return r;
  }

  CheckResult check_intersections() const {
    CheckResult r{"line-clique-intersections",
                  "supports meet lines in {0,q}, top cliques in {0,q^l}, "
                  "star cliques in {0,q^{m-l}}",
                  verifydetail::instance_string(opt_, nullptr), false, ""};
    const CliqueTables cliques = clique_tables(geom_);
    bool ok = true;
    std::string witness;
    for_each_message(*opt_.field, code_.dim(), [&](const std::vector<int>& msg) {
      if (!ok) return;
      const std::vector<int> w = code_.encode(msg);
      if (verifydetail::word_weight(w) == 0) return;
      const SupportReport rep = support_structure_checks(geom_, cliques, w);
      if (!rep.pass()) {
        ok = false;
        witness = "message " + verifydetail::format_message(msg);
        if (!rep.line_intersections_ok) witness += " line";
        if (!rep.top_cliques_ok) witness += " top-clique";
        if (!rep.star_cliques_ok) witness += " star-clique";
        if (!rep.divisibility_ok) witness += " divisibility";
      }
    });
    r.pass = ok;
    r.detail = ok ? std::to_string(cliques.top.size()) + " top cliques, " +
                        std::to_string(cliques.star.size()) + " star cliques"
                  : witness;
    return r;
  }

  CheckResult check_eisfeld() const {
    CheckResult r{"eisfeld-bounds",
                  "nonzero weights lie in the eigenvalue bounds and satisfy "
                  "the collinear-pair identity",
                  verifydetail::instance_string(opt_, nullptr), false, ""};
    const EisfeldBounds b = eisfeld_bounds(opt_.l, opt_.m, opt_.field->q());
    bool ok = true;
    std::string witness;
    for_each_message(*opt_.field, code_.dim(), [&](const std::vector<int>& msg) {
      if (!ok) return;
      const std::vector<int> w = code_.encode(msg);
      if (verifydetail::word_weight(w) == 0) return;
      if (!verify_eisfeld(geom_, w)) {
        ok = false;
        witness = "message " + verifydetail::format_message(msg) + " weight " +
                  std::to_string(verifydetail::word_weight(w));
      }
    });
    r.pass = ok;
    std::ostringstream os;
    os << "theta=(" << b.theta0 << "," << b.theta1 << "," << b.theta_ell
       << ") lower=" << b.lower << " upper=" << b.upper_num << "/" << b.upper_den;
    r.detail = ok ? os.str() : witness;
    return r;
  }

  CheckResult check_cyclic_tanner() const {
    CheckResult r{"cyclic-tanner",
                  "the Hamming cyclic code equals the dual of the span of the "
                  "cyclic shifts of its parity vector",
                  "n=7 q=2", false, ""};
    const FieldPtr f2 = make_field(2, 1);
    const std::vector<int> h{1, 1, 1, 0, 1, 0, 0};
    const LinearCode tanner = maximal_tanner_code(cyclic_as_tanner(h, f2));
    // independent oracle: span of all cyclic shifts, then the dual
    std::vector<std::vector<int>> rows;
    for (int s = 0; s < 7; ++s) {
      std::vector<int> row(7, 0);
      for (int i = 0; i < 7; ++i) row[static_cast<std::size_t>((i + s) % 7)] = h[static_cast<std::size_t>(i)];
      rows.push_back(std::move(row));
    }
    std::vector<Label> coords{0, 1, 2, 3, 4, 5, 6};
    const LinearCode oracle =
        LinearCode::make(f2, coords, Matrix::from_rows(f2, rows)).dual();
    const auto d = tanner.min_distance_bruteforce();
    r.pass = tanner == oracle && tanner.dim() == 4 && d && *d == 3;
    r.detail = "dim=" + std::to_string(tanner.dim()) +
               " d=" + (d ? std::to_string(*d) : "none");
    return r;
  }

 private:
  VerifyOptions opt_;
  Grassmannian geom_;
  LinearCode code_;
};

}  // namespace grasscode
