#include "cli.hpp"

#include "cox/presentations.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace coxcli {

using json = nlohmann::ordered_json;
using namespace cox;

namespace {

constexpr const char* kCodeVersion = "coxdual-1";

struct Config {
  std::string command;
  std::string group;
  std::string coxeter_order;
  int root_depth = kDefaultRootDepth;
  long size_cap = kDefaultSizeCap;
  int length_cap = kDefaultLengthCap;
  long chain_cap = long(kDefaultChainCap);
  double tol = kAxialTolerance;
  unsigned seed = 20240611;
  int samples = 1000;
  double window = 3;
  std::string ordering;
  bool standard = false;
  std::string out;
  std::string format = "json";
  std::string cache_dir;

  json to_json() const {
    json j;
    j["command"] = command;
    j["group"] = group;
    j["coxeter_order"] = coxeter_order;
    j["root_depth"] = root_depth;
    j["size_cap"] = size_cap;
    j["length_cap"] = length_cap;
    j["chain_cap"] = chain_cap;
    j["tol"] = tol;
    j["seed"] = seed;
    j["samples"] = samples;
    j["window"] = window;
    j["ordering"] = ordering;
    j["standard"] = standard;
    j["format"] = format;
    return j;
  }
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string summary;
  json result;
  std::map<std::string, std::string> renderings;  // dot, csv, text
};

// Lazily built shared state for one job.
struct Job {
  const Config& cfg;
  CoxeterSystem sys;
  std::vector<int> order;
  GroupElement w;
  std::optional<ReflectionSet> refl_;
  std::shared_ptr<LabeledInterval> P_;

  explicit Job(const Config& c) : cfg(c), sys(build_system(c.group)) {
    order.resize(sys.rank());
    std::iota(order.begin(), order.end(), 0);
    if (!c.coxeter_order.empty()) order = parse_order(c.coxeter_order);
    w = coxeter_element(sys, order);
  }

  int generator(const std::string& tok) const {
    const auto& names = sys.matrix.names;
    auto it = std::find(names.begin(), names.end(), tok);
    if (it != names.end()) return int(it - names.begin());
    try {
      size_t pos = 0;
      const int i = std::stoi(tok, &pos);
      if (pos == tok.size() && i >= 0 && i < sys.rank()) return i;
    } catch (const std::exception&) {
    }
    throw ConfigError("unknown generator '" + tok + "'");
  }

  std::vector<std::string> split(const std::string& s) const {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ','))
      if (!tok.empty()) out.push_back(tok);
    return out;
  }

  std::vector<int> parse_order(const std::string& s) const {
    std::vector<int> o;
    for (const auto& t : split(s)) o.push_back(generator(t));
    std::vector<int> sorted = o;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < int(sorted.size()); ++i)
      if (sorted[i] != i || int(sorted.size()) != sys.rank())
        throw ConfigError("--coxeter-order must be a permutation of the generators");
    return o;
  }

  const ReflectionSet& refl() {
    if (!refl_) refl_ = enumerate_reflections(sys, cfg.root_depth);
    return *refl_;
  }

  std::shared_ptr<LabeledInterval> interval() {
    if (!P_) {
      if (cfg.standard) {
        if (sys.classification != Geometry::spherical) throw NotSpherical("standard interval needs a finite group");
        P_ = std::make_shared<LabeledInterval>(weak_order_interval(sys));
      } else {
        P_ = std::make_shared<LabeledInterval>(build_interval(sys, w.matrix, refl()));
      }
    }
    return P_;
  }

  std::string word(const std::vector<int>& wd) const { return wd.empty() ? "1" : sys.word_string(wd); }
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string label_word(const LabeledInterval& P, const std::vector<int>& labels) {
  std::vector<std::string> v;
  for (int l : labels) v.push_back(P.label_names[l]);
  return join(v, " ");
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(std::stod(fmt_double(v[i])));
  return a;
}

Output cmd_info(Job& job) {
  const auto& sys = job.sys;
  Output o;
  json& r = o.result;
  r["matrix"] = sys.matrix.to_string();
  r["generators"] = sys.matrix.names;
  r["rank"] = sys.rank();
  r["geometry"] = to_string(sys.classification);
  r["irreducible"] = sys.irreducible;
  r["signature"] = {sys.sig.plus, sys.sig.minus, sys.sig.zero};
  r["coxeter_element"] = job.word(job.w.word);
  const auto ord = element_order(job.w.matrix, 1000);
  r["coxeter_element_order"] = ord ? json(*ord) : json("exceeds cap");
  o.summary = job.cfg.group + ": rank " + std::to_string(sys.rank()) + ", " + to_string(sys.classification) +
              (sys.irreducible ? "" : ", reducible") + ", w = " + job.word(job.w.word) + " of order " +
              (ord ? std::to_string(*ord) : std::string("> 1000"));
  return o;
}

Output cmd_enumerate(Job& job) {
  if (job.sys.classification != Geometry::spherical) throw NotSpherical("enumerate needs a finite group");
  const auto E = enumerate(job.sys, job.cfg.length_cap, job.cfg.size_cap);
  if (!E.complete) throw CapExceeded("enumeration hit --size-cap or --length-cap");
  Output o;
  std::map<int, long> by_length;
  for (int l : E.length) ++by_length[l];
  json dist = json::array();
  for (auto [l, c] : by_length) dist.push_back({l, c});
  o.result["order"] = E.elements.size();
  o.result["length_distribution"] = dist;
  std::ostringstream csv;
  csv << "index,length,word\n";
  json els = json::array();
  for (size_t i = 0; i < E.elements.size(); ++i) {
    els.push_back(job.word(E.elements[i].word));
    csv << i << "," << E.length[i] << "," << job.word(E.elements[i].word) << "\n";
  }
  o.result["elements"] = els;
  o.renderings["csv"] = csv.str();
  o.summary = "enumerate: " + std::to_string(E.elements.size()) + " elements, longest length " +
              std::to_string(by_length.rbegin()->first);
  return o;
}

Output cmd_interval(Job& job) {
  auto P = job.interval();
  Output o;
  o.result = interval_to_json(*P);
  o.renderings["dot"] = interval_to_dot(*P);
  o.summary = "interval: " + std::to_string(P->size()) + " elements, rank " + std::to_string(P->rank[P->top]) +
              (P->truncated ? " (truncated)" : "");
  return o;
}

Output cmd_lattice(Job& job) {
  auto P = job.interval();
  const auto rep = lattice_check(*P);
  const auto names = element_names(*P);
  Output o;
  o.result["is_lattice"] = rep.is_lattice;
  o.result["elements"] = P->size();
  o.result["truncation_caveat"] = rep.truncation_caveat;
  if (rep.witness) {
    json wj;
    wj["u"] = names[rep.witness->u];
    wj["v"] = names[rep.witness->v];
    wj["kind"] = rep.witness->upper ? "minimal upper bounds" : "maximal lower bounds";
    json b = json::array();
    for (int x : rep.witness->bounds) b.push_back(names[x]);
    wj["bounds"] = b;
    wj["verified"] = rep.witness_verified;
    o.result["witness"] = wj;
  }
  o.summary = std::string("lattice: ") + (rep.is_lattice ? "true" : "false") + " (" + std::to_string(P->size()) +
              " elements" + (rep.truncation_caveat ? ", truncated" : "") + ")";
  return o;
}

Output cmd_factorizations(Job& job) {
  auto P = job.interval();
  const auto ch = maximal_chains(*P, size_t(job.cfg.chain_cap));
  if (ch.overflow) throw CapExceeded("factorizations exceed --chain-cap");
  Output o;
  json a = json::array();
  std::ostringstream csv, text;
  csv << "index,factors\n";
  for (size_t i = 0; i < ch.chains.size(); ++i) {
    const std::string s = label_word(*P, ch.chains[i].factors);
    a.push_back(s);
    csv << i << "," << s << "\n";
    text << s << "\n";
  }
  o.result["count"] = ch.chains.size();
  o.result["factorizations"] = a;
  o.result["truncated"] = P->truncated;
  o.renderings["csv"] = csv.str();
  o.renderings["text"] = text.str();
  o.summary = "factorizations: " + std::to_string(ch.chains.size()) + (P->truncated ? " (truncated)" : "");
  return o;
}

Output cmd_hurwitz(Job& job) {
  if (job.cfg.standard) throw ConfigError("hurwitz works on the dual interval");
  auto P = job.interval();
  const auto ch = maximal_chains(*P, size_t(job.cfg.chain_cap));
  if (ch.overflow) throw CapExceeded("factorizations exceed --chain-cap");
  const auto rep = hurwitz_orbits(ch.chains, job.refl(), size_t(job.cfg.chain_cap));
  if (rep.overflow) throw CapExceeded("Hurwitz orbit exceeds --chain-cap");
  Output o;
  json orbits = json::array();
  for (const auto& orb : rep.orbits) {
    json a = json::array();
    for (const auto& f : orb) a.push_back(label_word(*P, f));
    orbits.push_back(a);
  }
  o.result["orbits"] = orbits;
  o.result["transitive"] = rep.transitive;
  o.result["truncated"] = P->truncated;
  o.summary = "hurwitz: " + std::to_string(rep.orbits.size()) + " orbit(s) on " + std::to_string(ch.chains.size()) +
              " factorizations" + (rep.transitive ? ", transitive" : "");
  return o;
}

std::vector<int> resolve_ordering(Job& job, const LabeledInterval& P) {
  if (!job.cfg.ordering.empty()) {
    std::vector<int> ord;
    for (const auto& t : job.split(job.cfg.ordering)) {
      auto it = std::find(P.label_names.begin(), P.label_names.end(), t);
      if (it == P.label_names.end()) throw ConfigError("unknown label '" + t + "' in --ordering");
      ord.push_back(int(it - P.label_names.begin()));
    }
    return ord;
  }
  if (job.cfg.standard) throw ConfigError("--ordering is required with --standard");
  const auto ax = axial_ordering(job.sys, job.w.matrix, job.refl(), {}, std::nullopt, std::nullopt, job.cfg.tol);
  return ax.order;
}

Output cmd_el_check(Job& job) {
  auto P = job.interval();
  const auto ordering = resolve_ordering(job, *P);
  const auto rep = el_check(*P, ordering);
  const auto names = element_names(*P);
  Output o;
  std::vector<std::string> ord_names;
  std::set<int> used;
  for (const auto& c : P->covers) used.insert(c.label);
  for (int l : ordering)
    if (used.count(l)) ord_names.push_back(P->label_names[l]);
  o.result["ordering"] = ord_names;
  o.result["ok"] = rep.ok;
  json f = json::array();
  for (const auto& x : rep.failures)
    f.push_back({{"element", names[x.element]},
                 {"increasing_chains", x.increasing_chains},
                 {"increasing_is_lex_first", x.increasing_is_lex_first}});
  o.result["failures"] = f;
  o.summary = std::string("el-check: ") + (rep.ok ? "ok" : "fails at " + std::to_string(rep.failures.size()) +
                                                              " element(s)") +
              " (" + join(ord_names, " < ") + ")";
  return o;
}

Output cmd_axis(Job& job) {
  const auto ax = axis(job.sys, job.w.matrix, job.cfg.tol);
  Output o;
  json& r = o.result;
  r["kind"] = to_string(ax.kind);
  r["invariance_error"] = std::stod(fmt_double(ax.invariance_error));
  std::string detail;
  if (ax.kind == AxisKind::spherical) {
    const auto sp = spectral_report(job.sys, job.w, job.cfg.tol);
    r["coxeter_number"] = sp.coxeter_number;
    r["exponents"] = sp.exponents;
    const auto lem = lemma_check(job.sys, job.w.matrix, job.cfg.samples, job.cfg.seed, job.cfg.tol);
    r["lemma"] = {{"samples", lem.samples},
                  {"axis_displacement", std::stod(fmt_double(lem.axis_displacement))},
                  {"min_sample_displacement", std::stod(fmt_double(lem.min_sample_displacement))},
                  {"violations", lem.violations}};
    o.renderings["csv"] = spectral_csv({std::pair<std::string, SpectralReport>{job.cfg.group, sp}});
    detail = ", h = " + std::to_string(sp.coxeter_number) + ", lemma violations " + std::to_string(lem.violations) +
             "/" + std::to_string(lem.samples);
  } else if (ax.kind == AxisKind::euclidean) {
    r["point"] = vec_json(ax.point);
    r["direction"] = vec_json(ax.direction);
    r["translation"] = std::stod(fmt_double(ax.translation));
    detail = ", translation " + fmt_double(ax.translation);
  } else {
    r["lambda"] = std::stod(fmt_double(ax.lambda));
    r["ray_plus"] = vec_json(ax.ray_plus);
    r["ray_minus"] = vec_json(ax.ray_minus);
    detail = ", lambda " + fmt_double(ax.lambda);
  }
  o.summary = "axis: " + to_string(ax.kind) + detail;
  return o;
}

Output cmd_axial_order(Job& job) {
  const auto ord = axial_ordering(job.sys, job.w.matrix, job.refl(), {}, std::nullopt, std::nullopt, job.cfg.tol);
  Output o;
  o.result = ordering_to_json(ord, job.refl());
  std::vector<std::string> names;
  for (int r : ord.order) names.push_back(job.refl().names[r]);
  std::ostringstream text;
  text << join(names, " < ") << "\n";
  o.renderings["text"] = text.str();
  o.summary = "axial-order: " + std::to_string(ord.order.size()) + " reflections, " +
              std::to_string(ord.tie_classes.size()) + " tie class(es)";
  return o;
}

Output cmd_axial_chamber_check(Job& job) {
  const auto ax = axis(job.sys, job.w.matrix, job.cfg.tol);
  const double lo = ax.kind == AxisKind::spherical ? 0 : -job.cfg.window;
  const double hi = ax.kind == AxisKind::spherical ? 2 * M_PI : job.cfg.window;
  const auto chambers = axial_chambers(job.sys, ax, job.refl(), lo, hi);
  Output o;
  json a = json::array();
  size_t good = 0;
  for (const auto& c : chambers) {
    const auto f = axial_factorization_check(job.sys, job.w.matrix, c.element);
    good += f.found;
    std::vector<std::string> walls;
    for (int i : f.ordering) walls.push_back(job.sys.matrix.names[i]);
    a.push_back({{"chamber", job.word(c.element.word)},
                 {"parameter", std::stod(fmt_double(c.parameter))},
                 {"factors_w", f.found},
                 {"wall_order", walls}});
  }
  o.result["chambers"] = a;
  o.summary = "axial-chamber-check: " + std::to_string(good) + "/" + std::to_string(chambers.size()) +
              " axial chambers factor w";
  return o;
}

DeltaComplex build_complex(Job& job) { return interval_complex(job.interval(), &job.sys, size_t(job.cfg.size_cap)); }

std::string counts_string(const DeltaComplex& K) {
  std::vector<std::string> c;
  for (auto n : K.counts()) c.push_back(std::to_string(n));
  return "(" + join(c, ",") + ")";
}

std::string chi_string(const DeltaComplex& K) {
  auto chi = euler_characteristic_checked(K);
  return chi ? "chi = " + std::to_string(*chi) : std::string("truncated, no chi");
}

Output complex_output(const std::string& what, const DeltaComplex& K, const MorseMatching* m = nullptr) {
  Output o;
  o.result = complex_to_json(K, m);
  o.result.erase("schema");
  o.renderings["csv"] = boundary_csv(boundary_matrices(K));
  o.summary = what + ": " + counts_string(K) + ", " + chi_string(K);
  return o;
}

Output cmd_complex(Job& job) { return complex_output("complex", build_complex(job)); }

DualSalvetti salvetti(Job& job, const DeltaComplex& K) {
  if (job.cfg.standard) throw ConfigError("the dual Salvetti complex is built from the dual interval");
  auto XS = dual_salvetti(job.sys, K, job.order, job.cfg.root_depth);
  XS.X.truncated = XS.cells_outside_truncation > 0;
  return XS;
}

Output cmd_dual_salvetti(Job& job) {
  const auto K = build_complex(job);
  const auto XS = salvetti(job, K);
  Output o = complex_output("dual-salvetti", XS.X);
  json p = json::array();
  for (const auto& T : XS.parabolics) {
    std::string s;
    for (int i : T) s += job.sys.matrix.names[i];
    p.push_back(s.empty() ? "{}" : s);
  }
  o.result["parabolics"] = p;
  o.result["cells_outside_truncation"] = XS.cells_outside_truncation;
  return o;
}

Output cmd_morse(Job& job) {
  const auto K = build_complex(job);
  const auto XS = salvetti(job, K);
  const auto ord = axial_ordering(job.sys, job.w.matrix, job.refl(), {}, std::nullopt, std::nullopt, job.cfg.tol);
  const auto M = morse_matching(K, XS.X, ord);
  Output o = complex_output("morse", K, &M);
  auto nm = [&](const CellRef& c) { return K.name(K.cells[c.dim][c.index]); };
  json outside = json::array();
  for (const auto& c : M.critical_outside) outside.push_back(nm(c));
  o.result["critical_outside_x"] = outside;
  json exc = json::array();
  for (const auto& c : M.exceptional) exc.push_back(nm(c));
  o.result["stage1_exceptional"] = exc;
  std::ostringstream csv;
  csv << "lower,upper,stage\n";
  for (const auto& p : M.pairs) csv << nm(p.lower) << "," << nm(p.upper) << "," << p.stage << "\n";
  o.renderings["csv"] = csv.str();
  o.summary = "morse: " + std::to_string(M.pairs.size()) + " pairs, " + std::to_string(M.critical.size()) +
              " critical (" + std::to_string(M.critical_outside.size()) + " outside X), " +
              (M.involution ? "involution" : "not an involution") + ", " + (M.acyclic ? "acyclic" : "cyclic");
  return o;
}

Output cmd_homology(Job& job) {
  auto K = build_complex(job);
  std::string which = "K";
  if (K.truncated) {
    K = salvetti(job, K).X;
    which = "X'";
    if (K.truncated) throw CapExceeded("X' does not fit in the truncation; raise --root-depth");
  }
  const auto H = homology(K);
  Output o;
  json a = json::array();
  for (const auto& h : H) {
    json t = json::array();
    for (const auto& x : h.torsion) t.push_back(x.get_str());
    a.push_back({{"betti", h.betti}, {"torsion", t}});
  }
  o.result["complex"] = which;
  o.result["dims"] = K.counts();
  o.result["homology"] = a;
  o.summary = "homology of " + which + ": " + to_string(H);
  return o;
}

Output cmd_presentation(Job& job) {
  auto P = job.interval();
  const auto pres = interval_group_presentation(*P, true, size_t(job.cfg.chain_cap));
  const auto ab = abelianization(pres);
  Output o;
  json rels = json::array();
  for (const auto& [l, r] : pres.relations) rels.push_back({pres.word_string(l), pres.word_string(r)});
  o.result["generators"] = pres.generators;
  o.result["relations"] = rels;
  o.result["removed_relations"] = pres.removed.size();
  o.result["abelianization"] = to_string(ab);
  o.renderings["text"] = presentation_text(pres);
  o.summary = "presentation: " + std::to_string(pres.generators.size()) + " generators, " +
              std::to_string(pres.relations.size()) + " relations, abelianization " + to_string(ab);
  return o;
}

Output cmd_verify_table1(Job& job) {
  const auto c = verify_table1(job.cfg.group, job.cfg.tol, job.cfg.size_cap);
  Output o;
  o.result["type"] = c.printed.type;
  o.result["printed"] = {{"exponents", c.printed.exponents}, {"h", c.printed.h}, {"order", c.printed.order.get_str()}};
  o.result["computed"] = {{"exponents", c.exponents},
                          {"h", c.h},
                          {"order", c.enumerated ? c.order.get_str() : c.product_formula.get_str()},
                          {"enumerated", c.enumerated}};
  o.result["match"] = {{"exponents", c.exponents_match}, {"h", c.h_match}, {"order", c.order_match}};
  o.summary = c.summary;
  return o;
}

using Command = Output (*)(Job&);
const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> m{
      {"info", cmd_info},
      {"enumerate", cmd_enumerate},
      {"interval", cmd_interval},
      {"lattice", cmd_lattice},
      {"factorizations", cmd_factorizations},
      {"hurwitz", cmd_hurwitz},
      {"el-check", cmd_el_check},
      {"axis", cmd_axis},
      {"axial-order", cmd_axial_order},
      {"axial-chamber-check", cmd_axial_chamber_check},
      {"complex", cmd_complex},
      {"dual-salvetti", cmd_dual_salvetti},
      {"morse", cmd_morse},
      {"homology", cmd_homology},
      {"presentation", cmd_presentation},
      {"verify-table1", cmd_verify_table1},
  };
  return m;
}

std::string comment_prefix(const std::string& format) {
  if (format == "dot") return "// ";
  return "# ";
}

// The artifact in the requested format, with the producing config embedded.
std::string render(const Config& cfg, const Output& o) {
  if (cfg.format == "json") {
    json j;
    j["schema"] = 1;
    j["config"] = cfg.to_json();
    j["summary"] = o.summary;
    j["result"] = o.result;
    return j.dump(2) + "\n";
  }
  auto it = o.renderings.find(cfg.format);
  if (it == o.renderings.end())
    throw ConfigError("command '" + cfg.command + "' has no " + cfg.format + " output");
  return comment_prefix(cfg.format) + "config: " + cfg.to_json().dump() + "\n" + it->second;
}

struct CachedResult {
  std::string summary;
  std::string artifact;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& bytes) {
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, p);
}

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& p) : fd_(::open(p.c_str(), O_CREAT | O_RDWR, 0644)) {
    if (fd_ < 0) throw std::runtime_error("cannot open lock file " + p.string());
    ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

CachedResult produce(const Config& cfg) {
  Job job(cfg);
  const Output o = commands().at(cfg.command)(job);
  return {o.summary, render(cfg, o)};
}

CachedResult cached(const Config& cfg, std::ostream& err) {
  namespace fs = std::filesystem;
  json key = cfg.to_json();
  key["code_version"] = kCodeVersion;
  const std::string hex = sha256_hex(key.dump());
  const fs::path dir(cfg.cache_dir);
  fs::create_directories(dir);
  FileLock lock(dir / (hex + ".lock"));
  const fs::path entry = dir / (hex + ".json"), digest = dir / (hex + ".sha256");
  if (fs::exists(entry) && fs::exists(digest)) {
    const std::string bytes = read_file(entry);
    const std::string recorded = read_file(digest);
    bool good = sha256_hex(bytes) == recorded;
    CachedResult r;
    if (good) {
      try {
        const auto j = json::parse(bytes);
        r = {j.at("summary").get<std::string>(), j.at("artifact").get<std::string>()};
      } catch (const std::exception&) {
        good = false;
      }
    }
    if (good) {
      err << "cache: hit " << hex << "\n";
      return r;
    }
    err << "warning: cache entry " << hex << " failed verification; recomputing\n";
  } else {
    err << "cache: miss " << hex << "\n";
  }
  CachedResult r = produce(cfg);
  json j;
  j["summary"] = r.summary;
  j["artifact"] = r.artifact;
  const std::string bytes = j.dump();
  write_file(entry, bytes);
  write_file(digest, sha256_hex(bytes));
  return r;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Coxeter groups, dual intervals, and interval complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--group", cfg.group, "catalog string, e.g. A3, affine:A2, triangle:4,3,3")->required();
  app.add_option("--coxeter-order", cfg.coxeter_order, "generator order of w, e.g. a,b,c");
  app.add_option("--root-depth", cfg.root_depth, "root depth cutoff")->check(CLI::PositiveNumber);
  app.add_option("--size-cap", cfg.size_cap, "enumeration and cell cap")->check(CLI::PositiveNumber);
  app.add_option("--length-cap", cfg.length_cap, "word length cap")->check(CLI::PositiveNumber);
  app.add_option("--chain-cap", cfg.chain_cap, "maximal chain cap")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "floating tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for sampled checks");
  app.add_option("--samples", cfg.samples, "samples for the displacement check")->check(CLI::PositiveNumber);
  app.add_option("--window", cfg.window, "axis parameter window for infinite groups")->check(CLI::PositiveNumber);
  app.add_option("--ordering", cfg.ordering, "reflection order for el-check, e.g. a,bab,b");
  app.add_flag("--standard", cfg.standard, "use the weak order interval [1, delta]");
  app.add_option("--out", cfg.out, "artifact path");
  app.add_option("--format", cfg.format, "artifact format")->check(CLI::IsMember({"json", "dot", "csv", "text"}));
  app.add_option("--cache-dir", cfg.cache_dir, "cache directory");
  for (const auto& [name, fn] : commands()) app.add_subcommand(name)->callback([&cfg, name = name] { cfg.command = name; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::config_error;
  }

  try {
    const CachedResult r = cfg.cache_dir.empty() ? produce(cfg) : cached(cfg, err);
    if (!cfg.out.empty()) {
      std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
      f << r.artifact;
      if (!f) throw ConfigError("cannot write " + cfg.out);
    }
    out << r.summary << "\n";
    return Exit::ok;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::config_error;
  } catch (const NotSpherical& e) {
    err << "error: " << e.what() << "\n";
    return Exit::config_error;
  } catch (const CapExceeded& e) {
    err << "error: cap exceeded: " << e.what() << "\n";
    return Exit::cap_exceeded;
  } catch (const TruncationError& e) {
    err << "error: cap exceeded: " << e.what() << "\n";
    return Exit::cap_exceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return Exit::config_error;
  } catch (const AxisDiagnostic& e) {
    err << "error: " << e.what() << "\n";
    return Exit::config_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return Exit::internal_error;
  }
}

}  // namespace coxcli
