#include "torelli/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

#include "torelli/catalog.hpp"
#include "torelli/hypersurface.hpp"
#include "torelli/invariants.hpp"
#include "torelli/minimal_model.hpp"
#include "torelli/report.hpp"

namespace torelli::cli {

using nlohmann::json;

namespace {

struct Options {
  bool json = false;
  std::string reference;
  int max_degree = -1;
  int n = 3;
  long long d = 0;
  std::size_t g = 1;
  std::string word;
  std::string file;
  bool strict = false;
  bool verdicts = false;
};

ManifoldDescriptor resolve(const std::string& reference) {
  try {
    return resolve_reference(reference);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int model_degree(int flag, int fallback) {
  if (flag >= 0) return flag;
  if (const char* env = std::getenv("TORELLI_MAX_DEGREE")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError("TORELLI_MAX_DEGREE is not an integer");
    }
  }
  return fallback;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_verdict(const Options& o, std::ostream& out) {
  const ManifoldDescriptor d = resolve(o.reference);
  VerdictOptions vo;
  vo.max_degree = model_degree(o.max_degree, 4);
  const Verdict v = torelli_verdict(d, vo);
  if (o.json) emit(out, verdict_json(v));
  else out << verdict_text(v);
  return kOk;
}

int cmd_model(const Options& o, std::ostream& out) {
  const ManifoldDescriptor d = resolve(o.reference);
  if (!d.ring) throw std::domain_error("'" + d.name + "' has no cohomology ring; a model needs one");
  const int n = model_degree(o.max_degree, 5);
  MinimalModelResult m;
  try {
    m = build_minimal_model(*d.ring, n);
  } catch (const std::invalid_argument& e) {
    if (!d.simply_connected || d.ring->dim(1) != 0) throw std::domain_error(e.what());
    throw UsageError(e.what());
  }
  if (o.json) emit(out, model_json(d.name, m));
  else out << model_text(d.name, m);
  return kOk;
}

int cmd_hypersurface(const Options& o, std::ostream& out) {
  if (o.n < 1 || o.d < 1) throw UsageError("hypersurface needs --n >= 1 and --d >= 1");
  const HypersurfaceData h = chern_data(o.n, o.d);
  if (o.json) out << hypersurface_json(h).dump() << "\n";
  else out << hypersurface_text(h);
  return kOk;
}

int cmd_j(const Options& o, std::ostream& out) {
  TwistWord w;
  try {
    w = parse_twist_word(o.g, o.word);
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  const RationalVector j = j_of_twist_word(w);
  if (o.json) out << j_json(o.g, j).dump() << "\n";
  else out << h3_text(j) << "\n";
  return kOk;
}

RationalMatrix read_matrix(const json& v, const std::string& field) {
  if (!v.is_array()) throw DescriptorError(field, "expected an array of rows");
  std::vector<RationalVector> rows;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& row = v[i];
    if (!row.is_array()) throw DescriptorError(field + "/" + std::to_string(i), "expected an array");
    if (i == 0) cols = row.size();
    if (row.size() != cols) throw DescriptorError(field + "/" + std::to_string(i), "ragged matrix");
    RationalVector r;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const auto& x = row[j];
      const std::string path = field + "/" + std::to_string(i) + "/" + std::to_string(j);
      try {
        r.push_back(x.is_number_integer() ? Rational(x.get<long>()) : parse_rational(x.get<std::string>()));
      } catch (const std::exception& e) {
        throw DescriptorError(path, e.what());
      }
    }
    rows.push_back(std::move(r));
  }
  return RationalMatrix::from_rows(rows, cols);
}

std::size_t read_size(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc.at(key).is_number_unsigned()) throw DescriptorError("/" + key, "expected a natural number");
  return doc.at(key).get<std::size_t>();
}

RationalVector read_vector(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw DescriptorError("/" + key, "missing");
  RationalMatrix m = read_matrix(json::array({doc.at(key)}), "/" + key);
  return m.row(0);
}

MappingTorusData read_mapping_torus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DescriptorError("", std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw DescriptorError("", "document must be a JSON object");
  MappingTorusData t;
  t.b3 = read_size(doc, "b3");
  t.b4_torus = read_size(doc, "b4_torus");
  t.b4_base = read_size(doc, "b4_base");
  if (!doc.contains("delta")) throw DescriptorError("/delta", "missing");
  if (!doc.contains("restrict")) throw DescriptorError("/restrict", "missing");
  t.delta = read_matrix(doc.at("delta"), "/delta");
  if (doc.at("delta").empty()) t.delta = RationalMatrix(0, t.b3);
  t.restrict = read_matrix(doc.at("restrict"), "/restrict");
  if (doc.at("restrict").empty()) t.restrict = RationalMatrix(0, t.b4_torus);
  t.p1_torus = read_vector(doc, "p1_torus");
  t.zbar_products = read_vector(doc, "zbar_products");
  return t;
}

int cmd_jd(const Options& o, std::ostream& out) {
  const MappingTorusData t = read_mapping_torus(o.file);
  const RationalVector j = jd_from_mapping_torus(t);
  if (o.json) out << json{{"jd", rational_array(j)}}.dump() << "\n";
  else out << h3_text(j) << "\n";
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  std::ifstream probe(o.file);
  if (!probe) throw UsageError("cannot open '" + o.file + "'");
  const LoadResult r = load_descriptor_file(o.file, LoadOptions{o.strict});
  if (o.json) {
    emit(out, json{{"valid", true}, {"name", r.descriptor.name}, {"dim", r.descriptor.dim}, {"warnings", r.warnings}});
  } else {
    out << "valid: " << r.descriptor.name << " (dimension " << r.descriptor.dim << ")\n";
    for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
  }
  return kOk;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  const auto refs = catalog_references();
  std::vector<std::future<json>> jobs;
  for (const auto& ref : refs)
    jobs.push_back(std::async(std::launch::async, [ref, verdicts = o.verdicts] {
      const ManifoldDescriptor d = resolve_reference(ref);
      json entry{{"reference", ref}, {"name", d.name}, {"dim", d.dim}, {"betti", d.betti},
                 {"ring", d.ring.has_value()}, {"p1", d.p1.has_value()}};
      if (verdicts) entry["verdict"] = verdict_json(torelli_verdict(d));
      return entry;
    }));
  json all = json::array();
  for (auto& j : jobs) all.push_back(j.get());
  if (o.json) {
    emit(out, all);
    return kOk;
  }
  for (const auto& e : all) {
    out << e["reference"].get<std::string>() << "  dim " << e["dim"].get<int>() << "  betti (";
    const auto& b = e["betti"];
    for (std::size_t k = 0; k < b.size(); ++k) out << (k ? "," : "") << b[k].get<long long>();
    out << ")";
    if (e.contains("verdict")) out << "  " << e["verdict"]["summary"].get<std::string>();
    out << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational homotopy and Torelli-group invariants of manifolds", "torelli"};
  app.require_subcommand(1);
  // Inherited by subcommands created below, so a trailing --json reaches the parent.
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Emit canonical JSON");

  auto* verdict = app.add_subcommand("verdict", "Decide finiteness of the Torelli group");
  verdict->add_option("manifold", o.reference, "Builtin name or descriptor file")->required();
  verdict->add_option("--max-degree", o.max_degree, "Minimal model depth (default 4)")->check(CLI::NonNegativeNumber);

  auto* model = app.add_subcommand("minimal-model", "Sullivan minimal model of the cohomology ring");
  model->add_option("manifold", o.reference, "Builtin name or descriptor file")->required();
  model->add_option("--max-degree", o.max_degree, "Model depth (default 5)")->check(CLI::NonNegativeNumber);

  auto* hyper = app.add_subcommand("hypersurface", "Characteristic classes of a hypersurface in CP^{n+1}");
  hyper->add_option("--n", o.n, "Complex dimension")->required();
  hyper->add_option("--d", o.d, "Degree")->required();

  auto* jcmd = app.add_subcommand("j", "J of a product of Dehn twists");
  jcmd->add_option("--g", o.g, "Number of S^3 x S^3 summands")->required();
  jcmd->add_option("--word", o.word, "Twist word i:m,i:m,...")->required();

  auto* jd = app.add_subcommand("jd", "J_D from mapping-torus cohomology data");
  jd->add_option("file", o.file, "Mapping-torus JSON document")->required();

  auto* validate = app.add_subcommand("validate", "Validate a manifold descriptor");
  validate->add_option("file", o.file, "Descriptor JSON document")->required();
  validate->add_flag("--strict", o.strict, "Treat Poincare duality failures as errors");

  auto* catalog = app.add_subcommand("catalog", "List builtin manifolds");
  catalog->add_flag("--verdicts", o.verdicts, "Include Torelli verdicts");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verdict) return cmd_verdict(o, out);
    if (*model) return cmd_model(o, out);
    if (*hyper) return cmd_hypersurface(o, out);
    if (*jcmd) return cmd_j(o, out);
    if (*jd) return cmd_jd(o, out);
    if (*validate) return cmd_validate(o, out);
    if (*catalog) return cmd_catalog(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DescriptorError& e) {
    err << "invalid document: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace torelli::cli
