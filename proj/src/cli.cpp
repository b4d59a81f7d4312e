#include "circlering/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "circlering/codec.hpp"
#include "circlering/maximal.hpp"
#include "parallel.hpp"
#include "parse_util.hpp"

namespace circlering::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Settings {
  MaximalOptions maximal;
  KeyexOptions keyex;
  unsigned parallel = 1;
  bool pretty = false;
};

// key=value lines; '#' starts a comment.
void load_config(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = parse::strip_spaces(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const u64 value = parse::parse_u64(line.substr(eq + 1), key);
    if (key == "clique_cap") s.maximal.clique_cap = value;
    else if (key == "factor_bound") s.maximal.factor_bound = value;
    else if (key == "rational_prefix") s.maximal.rational_prefix = value;
    else if (key == "rational_parameters") s.maximal.rational_parameters = value;
    else if (key == "exponent_cap") s.keyex.rational_exponent_cap = value;
    else if (key == "eavesdropper_cap") s.keyex.eavesdropper_cap = value;
    else if (key == "parallel") s.parallel = static_cast<unsigned>(value);
    else throw Error(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": unknown key " + key);
  }
}

Json point_json(const Point& p) { return Json{{"x", p.x.to_string()}, {"y", p.y.to_string()}}; }

Json points_json(const std::vector<Point>& points) {
  Json a = Json::array();
  for (const Point& p : points) a.push_back(point_json(p));
  return a;
}

Json circle_json(const Circle& c) {
  return Json{{"field", c.field().to_string()},
              {"center", Json::array({c.center().x.to_string(), c.center().y.to_string()})},
              {"radius", c.radius().to_string()}};
}

Json cardinality_json(const CardinalityAnswer& a) {
  Json j;
  switch (a.kind) {
    case CardinalityAnswer::Kind::Finite: j["kind"] = "finite"; j["value"] = a.value; break;
    case CardinalityAnswer::Kind::CountablyInfinite: j["kind"] = "countably_infinite"; break;
    case CardinalityAnswer::Kind::AtMostTwo:
      j["kind"] = "at_most_two";
      j["witness"] = a.witness ? points_json({a.witness->first, a.witness->second}) : Json(nullptr);
      break;
  }
  return j;
}

std::string hex(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : bytes) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

class Emitter {
 public:
  Emitter(std::ostream& out, bool pretty) : out_(out), pretty_(pretty) {}
  void operator()(const Json& j) { out_ << (pretty_ ? j.dump(2) : j.dump()) << '\n'; }

 private:
  std::ostream& out_;
  bool pretty_;
};

struct CircleArgs {
  std::string field = "Fp:7";
  std::string center = "0,0";
  std::string radius = "1";

  void add(CLI::App* app) {
    app->add_option("--field", field, "Field descriptor: Fp:7, Fp2:7,x^2+1 or Q")->required();
    app->add_option("--center", center, "Circle center x,y")->capture_default_str();
    app->add_option("--radius", radius, "Nonzero radius")->required();
  }
  Circle circle() const {
    const Field f = Field::parse(field);
    return Circle(parse_point(f, center), f.parse_element(radius));
  }
};

// Summary line shared by the verification sweeps.
int summarize(Emitter& emit, const std::string& name, std::size_t instances, std::size_t bad) {
  emit(Json{{"summary", name}, {"instances", instances}, {"mismatches", bad}, {"match", bad == 0}});
  return bad == 0 ? kOk : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings settings;
  std::string config_path;

  CLI::App app{"Rational circular point sets, the circle rotation group and a toy key exchange",
               "circlering"};
  app.require_subcommand(1);
  app.add_option("--config", config_path, "key=value file with default bounds");
  unsigned parallel_flag = 1;
  auto* parallel_opt = app.add_option("--parallel", parallel_flag, "Worker threads for sweeps")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--pretty", settings.pretty, "Indent JSON output");
  app.add_flag("--json", "JSON-lines output (the default)");

  std::function<int(Emitter&)> action;

  // circle ------------------------------------------------------------------
  auto* circle_cmd = app.add_subcommand("circle", "Circle enumeration and classification");
  circle_cmd->require_subcommand(1);
  CircleArgs circle_args;
  std::string seed_text;
  std::size_t samples = 16;

  auto* enum_cmd = circle_cmd->add_subcommand("enum", "List the points of a finite circle");
  circle_args.add(enum_cmd);
  enum_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const Circle c = circle_args.circle();
      const auto points = enumerate_circle(c);
      emit(Json{{"circle", circle_json(c)},
                {"count", points.size()},
                {"expected_count", circle_size(c.field())},
                {"points", points_json(points)}});
      return kOk;
    };
  });

  auto* part_cmd = circle_cmd->add_subcommand("partition", "Split a circle into rational classes");
  circle_args.add(part_cmd);
  part_cmd->add_option("--samples", samples, "Parameters sampled over Q")->capture_default_str();
  part_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const Circle c = circle_args.circle();
      Json j{{"field", c.field().to_string()}, {"circle", circle_json(c)}};
      if (c.field().kind() == FieldKind::Rationals) {
        RationalPointStream stream(c, RationalPointStream::Strategy::FullSweep);
        std::vector<CircleParameter> sample;
        for (std::size_t i = 0; i < samples; ++i) {
          sample.push_back(stream.peek_parameter());
          stream.next();
        }
        Json classes = Json::array();
        for (const auto& [key, set] : partition_rational_circle_points(c, sample, settings.maximal.factor_bound))
          classes.push_back(Json{{"squarefree_part", key.get_str()}, {"points", points_json(set.points())}});
        j["classes"] = classes;
        emit(j);
        return kOk;
      }
      const auto [c1, c2] = partition_prime_field_circle(c);
      const u64 p = c.field().characteristic();
      const u64 expected = p % 4 == 1 ? (p - 1) / 2 : (p + 1) / 2;
      j["classes"] = Json::array({points_json(c1.points()), points_json(c2.points())});
      j["class_size"] = Json::array({c1.size(), c2.size()});
      j["theorem_expected"] = expected;
      const bool match = c1.size() == expected && c2.size() == expected;
      j["match"] = match;
      emit(j);
      return match ? kOk : kMismatch;
    };
  });

  auto* cliques_cmd = circle_cmd->add_subcommand("cliques", "All e-maximal sets through a seed");
  circle_args.add(cliques_cmd);
  cliques_cmd->add_option("--seed", seed_text, "Seed point x,y on the circle")->required();
  cliques_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const Circle c = circle_args.circle();
      const Point seed = parse_point(c.field(), seed_text);
      const auto grown = grow_maximal_set(c, seed, settings.maximal);
      Json sets = Json::array();
      for (const auto& s : enumerate_emaximal_sets(c, seed, settings.maximal))
        sets.push_back(Json{{"size", s.size()},
                            {"status", std::string(to_string(s.status()))},
                            {"points", points_json(s.points())}});
      emit(Json{{"circle", circle_json(c)},
                {"seed", point_json(seed)},
                {"grown", points_json(grown.set.points())},
                {"sets", sets}});
      return kOk;
    };
  });

  // perfect -------------------------------------------------------------------
  auto* perfect_cmd = app.add_subcommand("perfect", "Perfect squared distances of a circle");
  CircleArgs perfect_args;
  perfect_args.add(perfect_cmd);
  perfect_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const Circle c = perfect_args.circle();
      Json values = Json::array(), reports = Json::array();
      for (const auto& r : perfect_distances(c, settings.maximal)) {
        values.push_back(r.q.to_string());
        reports.push_back(Json{{"q", r.q.to_string()},
                               {"acp", r.satisfies_acp},
                               {"witness_triangle",
                                points_json({(*r.witness)[0], (*r.witness)[1], (*r.witness)[2]})}});
      }
      emit(Json{{"circle", circle_json(c)},
                {"radius_squared_in_prime_field", c.radius().square().in_prime_subfield()},
                {"perfect", values},
                {"reports", reports}});
      return kOk;
    };
  });

  // verify --------------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "Theorem verification sweeps");
  verify_cmd->require_subcommand(1);
  u64 pmax = 200, graph_max = 97, qmax = 2000;

  auto* prime_cmd = verify_cmd->add_subcommand("prime-theorem", "Class sizes over F_p, p odd");
  prime_cmd->add_option("--pmax", pmax, "Largest prime")->capture_default_str();
  prime_cmd->add_option("--graph-max", graph_max, "Largest prime with a full pair scan")
      ->capture_default_str();
  prime_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const auto primes = odd_primes(3, pmax);
      const auto records = detail::parallel_map<PrimeTheoremRecord>(
          primes.size(), settings.parallel,
          [&](std::size_t i) { return verify_prime_theorem(primes[i], primes[i] <= graph_max); });
      std::size_t bad = 0;
      for (const auto& r : records) {
        Json j{{"p", r.p},
               {"class_sizes", r.class_sizes},
               {"expected", r.expected_class_size},
               {"radii", r.radii_checked},
               {"graph_checked", r.graph_checked},
               {"match", r.match}};
        if (!r.match) {
          ++bad;
          j["counterexample"] = r.counterexample;
        }
        emit(j);
      }
      return summarize(emit, "prime-theorem", records.size(), bad);
    };
  });

  auto* table_cmd = verify_cmd->add_subcommand("table", "c-maximal cardinalities by field and radius");
  table_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const auto radii = table_instances();
      const auto records = detail::parallel_map<TableRecord>(
          radii.size(), settings.parallel, [&](std::size_t i) { return verify_table_instance(radii[i]); });
      std::size_t bad = 0;
      for (const auto& r : records) {
        bad += r.match ? 0 : 1;
        emit(Json{{"field", r.field.to_string()},
                  {"radius", r.radius.to_string()},
                  {"column", std::string(to_string(r.column))},
                  {"expected", cardinality_json(r.expected)},
                  {"grown_size", r.grown_size},
                  {"match", r.match}});
      }
      return summarize(emit, "table", records.size(), bad);
    };
  });

  auto* mod4_cmd = verify_cmd->add_subcommand("mod4", "Orbit count versus a square root of -1");
  mod4_cmd->add_option("--qmax", qmax, "Largest prime power")->capture_default_str();
  mod4_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const auto powers = odd_prime_powers(qmax);
      const auto records = detail::parallel_map<Mod4Record>(
          powers.size(), settings.parallel,
          [&](std::size_t i) { return verify_mod4_instance(powers[i].first, powers[i].second); });
      std::size_t bad = 0;
      for (const auto& r : records) {
        bad += r.match ? 0 : 1;
        emit(Json{{"p", r.p},
                  {"degree", r.degree},
                  {"size", r.size},
                  {"admissible", r.admissible},
                  {"orbits_of_two", r.orbits_of_two},
                  {"orbits_of_four", r.orbits_of_four},
                  {"predicted_sqrt_minus_one", r.predicted_sqrt_minus_one},
                  {"sqrt_minus_one", r.sqrt_minus_one},
                  {"match", r.match}});
      }
      return summarize(emit, "mod4", records.size(), bad);
    };
  });

  // rot -----------------------------------------------------------------------
  auto* rot_cmd = app.add_subcommand("rot", "Rotation group algebra on C((0,0), r)");
  rot_cmd->require_subcommand(1);
  std::string rot_field, rot_radius, rot_point, rot_other;
  u64 rot_exp = 0, rot_bound = 10'000;
  bool rot_unchecked = false;
  auto rot_common = [&](CLI::App* sub) {
    sub->add_option("--field", rot_field, "Field descriptor")->required();
    sub->add_option("--radius", rot_radius, "Nonzero radius")->required();
    sub->add_option("--point", rot_point, "Group element x,y")->required();
  };
  auto rot_element = [&](const std::string& text) {
    const Field f = Field::parse(rot_field);
    const Point p = parse_point(f, text);
    return RotationElement(f.parse_element(rot_radius), p.x, p.y);
  };
  auto rot_emit = [&](Emitter& emit, const std::optional<RotationElement>& result, Json extra) {
    Json j{{"result", result ? point_json(result->point()) : Json(nullptr)}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["checks"] = Json{{"on_circle", !result || result->circle().contains(result->point())}};
    emit(j);
  };

  auto* mul_cmd = rot_cmd->add_subcommand("mul", "Product of two elements");
  rot_common(mul_cmd);
  mul_cmd->add_option("--other", rot_other, "Second element x,y")->required();
  mul_cmd->callback([&] {
    action = [&](Emitter& emit) {
      rot_emit(emit, rot_mul(rot_element(rot_point), rot_element(rot_other)), Json::object());
      return kOk;
    };
  });

  auto* pow_cmd = rot_cmd->add_subcommand("pow", "Power by square-and-multiply");
  rot_common(pow_cmd);
  pow_cmd->add_option("--exp", rot_exp, "Exponent n >= 0")->required();
  pow_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const RotationElement r = rot_pow(rot_element(rot_point), rot_exp);
      rot_emit(emit, r, Json{{"induced_squared_distance", induced_squared_distance(r).to_string()}});
      return kOk;
    };
  });

  auto* sqrt_cmd = rot_cmd->add_subcommand("sqrt", "Square root, if one exists");
  rot_common(sqrt_cmd);
  sqrt_cmd->add_flag("--unchecked", rot_unchecked, "Allow F_2, F_3 and F_5");
  sqrt_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const RotationElement a = rot_element(rot_point);
      const Circle c = a.circle();
      const auto b = rot_sqrt(a, rot_unchecked);
      rot_emit(emit, b,
               Json{{"induced_squared_distance", induced_squared_distance(a).to_string()},
                    {"perfect", classify_distance(c, induced_squared_distance(a)).is_perfect}});
      return kOk;
    };
  });

  auto* order_cmd = rot_cmd->add_subcommand("order", "Order or acyclicity of an element");
  rot_common(order_cmd);
  order_cmd->add_option("--bound", rot_bound, "Sweep bound over Q")->capture_default_str();
  order_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const RotationElement a = rot_element(rot_point);
      const CyclicityReport r = classify_cyclicity(a, rot_bound);
      Json verdict;
      switch (r.verdict) {
        case CyclicityReport::Verdict::Cyclic: verdict = {{"cyclic", r.value}}; break;
        case CyclicityReport::Verdict::Acyclic: verdict = "acyclic"; break;
        case CyclicityReport::Verdict::UndecidedUpTo: verdict = {{"undecided_up_to", r.value}}; break;
      }
      rot_emit(emit, a, Json{{"verdict", verdict}, {"sweep_clean", r.sweep_clean}});
      return kOk;
    };
  });

  // keyex ---------------------------------------------------------------------
  auto* keyex_cmd = app.add_subcommand("keyex", "Key exchange on the rotation group");
  keyex_cmd->require_subcommand(1);
  auto* demo_cmd = keyex_cmd->add_subcommand("demo", "Simulate one exchange");
  std::string kx_field, kx_radius = "1", kx_point;
  u64 seed_a = 1, seed_b = 2;
  demo_cmd->add_option("--field", kx_field, "Fp:<p> or Q")->required();
  demo_cmd->add_option("--radius", kx_radius, "Nonzero radius")->capture_default_str();
  demo_cmd->add_option("--point", kx_point, "Public base point x,y")->required();
  demo_cmd->add_option("--seed-a", seed_a, "Seed of party A")->capture_default_str();
  demo_cmd->add_option("--seed-b", seed_b, "Seed of party B")->capture_default_str();
  demo_cmd->callback([&] {
    action = [&](Emitter& emit) {
      const Field f = Field::parse(kx_field);
      const Point p = parse_point(f, kx_point);
      const ProtocolParams params(RotationElement(f.parse_element(kx_radius), p.x, p.y),
                                  settings.keyex);
      const Transcript t = simulate_exchange(params, seed_a, seed_b);
      const auto wire = encode(t);
      Json j{{"field", f.to_string()},
             {"radius", t.base.radius().to_string()},
             {"base", point_json(t.base.point())},
             {"base_order", params.base_order() ? Json(*params.base_order()) : Json(nullptr)},
             {"sent_a", point_json(t.sent_a.point())},
             {"sent_b", point_json(t.sent_b.point())},
             {"shared_a", point_json(t.shared_a.point())},
             {"shared_b", point_json(t.shared_b.point())},
             {"equal", t.equal}};
      if (t.eavesdropper)
        j["eavesdropper"] = Json{{"iterations", t.eavesdropper->iterations},
                                 {"recovered_exponent", t.eavesdropper->recovered_exponent
                                                            ? Json(*t.eavesdropper->recovered_exponent)
                                                            : Json(nullptr)}};
      j["wire"] = hex(wire);
      j["wire_roundtrip"] = decode_transcript(wire) == t;
      emit(j);
      return t.equal ? kOk : kMismatch;
    };
  });

  auto report = [&](std::string_view code, const std::string& message) {
    err << Json{{"error", code}, {"message", message}}.dump() << '\n';
    return kUsage;
  };

  std::vector<const char*> argv{"circlering"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::ostringstream detail;
    app.exit(e, detail, detail);
    return report("UsageError", e.what());
  }

  try {
    if (!config_path.empty()) load_config(config_path, settings);
    if (parallel_opt->count() > 0) settings.parallel = parallel_flag;
    Emitter emit(out, settings.pretty);
    return action(emit);
  } catch (const Error& e) {
    return report(to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return report("InternalError", e.what());
  }
}

}  // namespace circlering::cli
