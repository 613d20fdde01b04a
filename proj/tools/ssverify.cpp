#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ssverify/harness.hpp"

using namespace ssverify;

namespace {

struct Timer {
  std::string label;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  ~Timer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << label << ": " << s << " s\n";
  }
};

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

template <class T>
std::string list_text(const std::vector<T>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

std::vector<int> parse_labels(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty())
      continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ParseError("bad root label '" + tok + "'");
    }
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Whitespace separated integers, one row per line.
IntMatrix read_matrix(const std::string& path) {
  std::stringstream all(path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : slurp(path));
  std::vector<std::vector<BigInt>> rows;
  for (std::string line; std::getline(all, line);) {
    std::stringstream ls(line);
    std::vector<BigInt> row;
    for (std::string tok; ls >> tok;) {
      try {
        row.emplace_back(tok);
      } catch (const std::exception&) {
        throw ParseError("bad matrix entry '" + tok + "'");
      }
    }
    if (!row.empty())
      rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw ParseError("empty matrix");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw ParseError("ragged matrix");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(i, j) = rows[i][j];
  }
  return m;
}

DatumPtr datum_from_file(const std::string& path) {
  Json j;
  try {
    j = Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  auto mat = [&](const char* key) {
    if (!j.contains(key))
      throw ParseError(path + ": missing " + key);
    std::vector<std::vector<std::int64_t>> rows = j[key];
    SmallMatrix m(rows.size(), static_cast<std::size_t>(j.at("rank").get<int>()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols())
        throw DimensionMismatch(std::string(key) + " rows must have length rank");
      for (std::size_t a = 0; a < m.cols(); ++a)
        m(i, a) = rows[i][a];
    }
    return m;
  };
  return RootDatum::explicit_datum(mat("simple_roots"), mat("simple_coroots"));
}

struct DatumArgs {
  std::string type, isogeny = "adjoint", file;

  void add(CLI::App* app) {
    app->add_option("--type", type, "Cartan type, e.g. E6 or A2xA2");
    app->add_option("--isogeny", isogeny, "adjoint or sc")->capture_default_str();
    app->add_option("--file", file, "root datum JSON {rank, simple_roots, simple_coroots}");
  }
  DatumPtr build() const {
    if (!file.empty())
      return datum_from_file(file);
    if (type.empty())
      throw ParseError("need --type or --file");
    return RootDatum::build(type, parse_isogeny(isogeny));
  }
};

void emit(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw ParseError("cannot write " + path);
  out << text;
}

Json envelope(const std::string& command, Json cases) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["cases"] = std::move(cases);
  return j;
}

void print_calcul(const CalculReport& r) {
  std::cout << "case " << r.spec.id << ": " << r.group_label << ", levi [" << join(r.spec.levi) << "] of type "
            << r.spec.levi_type << ", n in " << list_text(r.spec.n_values) << ", order <= " << r.spec.bound << "\n";
  for (const auto& o : r.orbits) {
    std::cout << "  " << o.rep.str() << "  order " << o.order << "  orbit " << o.orbit_size << "  M-qi "
              << o.m_qi.size();
    for (std::size_t k = 0; k < r.spec.n_values.size(); ++k)
      std::cout << "  n=" << r.spec.n_values[k] << " " << list_text(o.multiset(k));
    std::cout << "\n";
  }
  if (r.check_holds)
    std::cout << "  order <= " << r.spec.check_bound << ": " << r.check_classes << " classes, "
              << (*r.check_holds ? "holds" : "fails") << "\n";
  std::cout << "  verdict: " << (r.holds && r.check_holds.value_or(true) ? "holds" : "fails") << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"ssverify: root data, semisimple classes and Frobenius twists"};
  app.require_subcommand(1);
  unsigned threads = default_threads();
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // datum info
  auto* datum = app.add_subcommand("datum", "root datum queries");
  datum->require_subcommand(1);
  auto* info = datum->add_subcommand("info", "diagram, roots and Cartan matrix");
  DatumArgs info_args;
  info_args.add(info);
  std::string info_json;
  info->add_option("--json", info_json)->expected(0, 1)->default_str("-");

  // torus
  auto* torus = app.add_subcommand("torus", "fixed points of F = q*phi on a torus");
  std::string phi_path;
  std::int64_t torus_q = 0;
  torus->add_option("--phi", phi_path, "matrix file (rows of integers, - for stdin)")->required();
  torus->add_option("--q", torus_q)->required()->check(CLI::Range(2, 1 << 30));

  // dim2-survey
  auto* dim2 = app.add_subcommand("dim2-survey", "all finite-order phi in GL2(Z)");
  std::int64_t dim2_q = 0;
  std::string dim2_json;
  dim2->add_option("--q", dim2_q)->required()->check(CLI::Range(2, 1 << 30));
  dim2->add_option("--json", dim2_json)->expected(0, 1)->default_str("-");

  // qi
  auto* qi = app.add_subcommand("qi", "quasi-isolated classes");
  DatumArgs qi_args;
  qi_args.add(qi);
  std::int64_t qi_bound = 6;
  std::string qi_json;
  qi->add_option("--bound", qi_bound, "largest order")->capture_default_str()->check(CLI::PositiveNumber);
  qi->add_option("--json", qi_json)->expected(0, 1)->default_str("-");

  // twistings
  auto* tw = app.add_subcommand("twistings", "F-stable twists of a Levi subgroup");
  DatumArgs tw_args;
  tw_args.add(tw);
  std::string tw_levi, tw_json;
  tw->add_option("--levi", tw_levi, "1-based simple root labels, e.g. 2,5,7");
  tw->add_option("--json", tw_json)->expected(0, 1)->default_str("-");

  // calcul
  auto* calcul = app.add_subcommand("calcul", "non-conjugacy of s and sz, cases 1-5");
  std::string calcul_which = "all", calcul_json;
  calcul->add_option("--case", calcul_which, "1..5 or all")->capture_default_str();
  calcul->add_option("--json", calcul_json)->expected(0, 1)->default_str("-");

  // ordre8
  auto* ordre8 = app.add_subcommand("ordre8", "order-8 elements in twisted centres of E7");
  std::int64_t o8_q = 3;
  std::string o8_json;
  ordre8->add_option("--q", o8_q)->capture_default_str()->check(CLI::IsMember({3, 5}));
  ordre8->add_option("--json", o8_json)->expected(0, 1)->default_str("-");

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) {
      auto rd = info_args.build();
      if (info->count("--json")) {
        Json j;
        j["type"] = rd->type_label();
        j["rank"] = rd->rank();
        j["semisimple_rank"] = rd->semisimple_rank();
        j["roots"] = rd->num_roots();
        std::vector<std::vector<std::int64_t>> cm;
        for (std::size_t i = 0; i < rd->semisimple_rank(); ++i)
          cm.push_back(rd->cartan().row(i));
        j["cartan"] = cm;
        j["diagram"] = diagram_text(*rd);
        emit(envelope("datum info", Json::array({j})), info_json);
      } else {
        std::cout << diagram_text(*rd) << "\n"
                  << "rank " << rd->rank() << ", semisimple rank " << rd->semisimple_rank() << ", "
                  << rd->num_roots() << " roots (" << rd->num_positive() << " positive)\n"
                  << "Cartan matrix\n"
                  << rd->cartan().str() << "\n";
      }
      return 0;
    }

    if (torus->parsed()) {
      TwistedTorus t(read_matrix(phi_path));
      const BigInt q(torus_q);
      const auto f = cyclo_factor(t);
      const auto g = fixed_structure(t, q);
      std::cout << "poly " << order_polynomial_text(f) << "\n"
                << "order " << f.evaluate(q) << "\n"
                << "structure " << g.str() << "\n";
      return g.order() == f.evaluate(q) ? 0 : 1;
    }

    if (dim2->parsed()) {
      Dim2Survey s = dim2_survey(BigInt(dim2_q));
      if (dim2->count("--json")) {
        emit(envelope("dim2-survey", Json::array({to_json(s)})), dim2_json);
      } else {
        for (const auto& e : s.entries)
          std::cout << e.phi.str() << "  " << order_polynomial_text(e.factors) << "  " << e.structure.str()
                    << (e.allowed ? "" : "  NOT LISTED") << "\n";
        std::cout << "verdict: " << (s.all_allowed ? "holds" : "fails") << "\n";
      }
      return s.all_allowed ? 0 : 1;
    }

    if (qi->parsed()) {
      auto rd = qi_args.build();
      const AlcoveSystem g(ReflectionSubgroup::full(rd));
      std::vector<int> simple(rd->semisimple_rank());
      std::iota(simple.begin(), simple.end(), 0);
      const auto reps = quasi_isolated_representatives(g, qi_bound);
      std::vector<Json> rows(reps.size());
      parallel_for(reps.size(), threads, [&](std::size_t i) {
        const ExtendedCentralizer c = centralizer(g, reps[i]);
        rows[i] = {{"coords", reps[i].str()},
                   {"order", reps[i].order()},
                   {"orbit_size", orbit_by_reflections(*rd, simple, reps[i]).size()},
                   {"centralizer_type", c.type_label()},
                   {"component_order", c.component_order}};
      });
      if (qi->count("--json")) {
        Json j;
        j["reps"] = rows;
        emit(envelope("qi", Json::array({j})), qi_json);
      } else {
        for (const auto& r : rows)
          std::cout << r["coords"].get<std::string>() << "  order " << r["order"] << "  orbit " << r["orbit_size"]
                    << "  centralizer " << r["centralizer_type"].get<std::string>() << " (A/A° of order "
                    << r["component_order"] << ")\n";
      }
      return 0;
    }

    if (tw->parsed()) {
      auto rd = tw_args.build();
      std::vector<int> levi = zero_based(parse_labels(tw_levi));
      for (int l : levi)
        if (l < 0 || static_cast<std::size_t>(l) >= rd->semisimple_rank())
          throw BadIndex("levi label " + std::to_string(l + 1));
      const auto twists = twistings(reflection_subgroup(rd, levi));
      if (tw->count("--json")) {
        Json arr = Json::array();
        for (const auto& t : twists) {
          std::vector<int> word;
          for (int i : t.w.word())
            word.push_back(i + 1);
          arr.push_back({{"w_word", word}, {"radical_poly", t.poly_text()}, {"component_orbits", t.component_orbits}});
        }
        emit(envelope("twistings", arr), tw_json);
      } else {
        for (const auto& t : twists)
          std::cout << t.display() << "\n";
      }
      return 0;
    }

    if (calcul->parsed()) {
      std::vector<CaseSpec> specs;
      if (calcul_which == "all") {
        specs = calcul_cases();
      } else {
        int id = 0;
        try {
          id = std::stoi(calcul_which);
        } catch (const std::exception&) {
          throw ParseError("--case takes 1..5 or all");
        }
        specs.push_back(calcul_case(id));
      }
      bool ok = true;
      Json cases = Json::array();
      for (const auto& spec : specs) {
        Timer timer{"case " + std::to_string(spec.id)};
        CalculReport r = run_calcul_case(spec, threads);
        ok = ok && r.holds && r.check_holds.value_or(true);
        if (calcul->count("--json"))
          cases.push_back(to_json(r));
        else
          print_calcul(r);
      }
      if (calcul->count("--json"))
        emit(envelope("calcul", cases), calcul_json);
      return ok ? 0 : 1;
    }

    if (ordre8->parsed()) {
      Timer timer{"ordre8"};
      Ordre8Report r = run_ordre8(o8_q, threads);
      if (ordre8->count("--json")) {
        emit(envelope("ordre8", Json::array({to_json(r)})), o8_json);
      } else {
        std::cout << "q = " << r.q << ", |Z8| = " << r.z8_size << ", " << r.polys.size() << " twistings\n";
        for (const auto& e : r.entries) {
          std::vector<std::int64_t> prof(e.profile.begin(), e.profile.end());
          std::cout << "  " << e.twist.display() << "  fixed " << e.fixed << "  orders " << list_text(prof)
                    << "  S^F = " << e.structure.str() << (e.mixed ? "" : "  (not mixed)") << "\n";
        }
        std::cout << "verdict: " << (r.holds ? "holds" : "fails") << "\n";
      }
      return r.holds ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
