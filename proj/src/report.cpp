#include "torelli/report.hpp"

#include <sstream>

namespace torelli {

using nlohmann::json;

json rational_array(const RationalVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json verdict_json(const Verdict& v) {
  json reasons = json::array();
  for (const auto& r : v.reasons) reasons.push_back({{"claim", r.claim}, {"cite", r.cite}});
  json numbers = json::object();
  if (v.bounds) {
    numbers["k"] = v.bounds->k;
    numbers["l_min"] = v.bounds->l_min;
    numbers["kpi4F_min"] = v.bounds->kpi4F_min;
  }
  if (v.j_vector) numbers["j_vector"] = rational_array(*v.j_vector);
  if (v.j_lattice_rank) numbers["j_lattice_rank"] = *v.j_lattice_rank;
  if (v.fibration) {
    numbers["pi4F"] = v.fibration->pi4F;
    numbers["kpi4B"] = v.fibration->kpi4B;
    numbers["fibration_kpi4F_min"] = v.fibration->kpi4F_min;
  }
  json out{{"name", v.name},
           {"status", to_string(v.status)},
           {"case", v.double_star_case ? json(*v.double_star_case) : json(nullptr)},
           {"route", v.route},
           {"reasons", std::move(reasons)},
           {"numbers", std::move(numbers)},
           {"summary", v.summary()}};
  if (!v.notes.empty()) out["notes"] = v.notes;
  return out;
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream out;
  out << v.summary() << "\n";
  for (const auto& r : v.reasons) out << "  - " << r.claim << " [" << r.cite << "]\n";
  for (const auto& n : v.notes) out << "  note: " << n << "\n";
  return out.str();
}

json model_json(const std::string& name, const MinimalModelResult& m) {
  json gens = json::object();
  const auto& cdga = m.model;
  for (std::size_t g = 0; g < cdga.size(); ++g) {
    const auto& gen = cdga.generators()[g];
    gens[std::to_string(gen.degree)].push_back(
        {{"name", gen.name}, {"d", format_polynomial(cdga, cdga.differential(g))}});
  }
  json ranks = json::object();
  json kernel = json::object();
  for (int k = 2; k <= m.max_degree; ++k) {
    ranks[std::to_string(k)] = m.homotopy_ranks[static_cast<std::size_t>(k)];
    kernel[std::to_string(k)] = m.hurewicz_kernel[static_cast<std::size_t>(k)];
  }
  return json{{"name", name},
               {"max_degree", m.max_degree},
               {"generators", std::move(gens)},
               {"homotopy_ranks", std::move(ranks)},
               {"hurewicz_kernel_ranks", std::move(kernel)},
               {"warnings", m.warnings}};
}

std::string model_text(const std::string& name, const MinimalModelResult& m) {
  std::ostringstream out;
  out << "minimal model of " << name << " through degree " << m.max_degree << "\n";
  for (int k = 2; k <= m.max_degree; ++k)
    out << "  pi_" << k << " (x) Q: rank " << m.homotopy_ranks[static_cast<std::size_t>(k)]
        << ", Hurewicz kernel rank " << m.hurewicz_kernel[static_cast<std::size_t>(k)] << "\n";
  const auto& cdga = m.model;
  constexpr std::size_t kListed = 40;
  for (std::size_t g = 0; g < cdga.size() && g < kListed; ++g)
    out << "  d " << cdga.generators()[g].name << " = " << format_polynomial(cdga, cdga.differential(g)) << "\n";
  if (cdga.size() > kListed) out << "  ... " << cdga.size() - kListed << " more generators (use --json)\n";
  for (const auto& w : m.warnings) out << "  warning: " << w << "\n";
  return out.str();
}

json hypersurface_json(const HypersurfaceData& h) {
  json out{{"euler", h.euler.get_str()}, {"p1", to_string(h.p1_coeff)}};
  // Euler characteristics stay exact numbers while they fit.
  if (h.euler.fits_slong_p()) out["euler"] = h.euler.get_si();
  if (h.betti) {
    out["b3"] = (*h.betti)[3];
  } else {
    out["chern"] = rational_array(h.chern.coeffs());
  }
  return out;
}

std::string hypersurface_text(const HypersurfaceData& h) {
  std::ostringstream out;
  out << "degree-" << h.d << " hypersurface of complex dimension " << h.n << "\n";
  out << "  c = ";
  for (int k = 0; k <= h.n; ++k) out << (k ? ", " : "") << to_string(h.c(k));
  out << "  (coefficients of h^k)\n";
  out << "  p1 = " << to_string(h.p1_coeff) << " h^2\n";
  out << "  euler = " << h.euler.get_str() << "\n";
  if (h.betti) {
    out << "  betti = (";
    for (std::size_t k = 0; k < h.betti->size(); ++k) out << (k ? ", " : "") << (*h.betti)[k];
    out << ")\n";
  }
  return out.str();
}

std::string h3_text(const RationalVector& j) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << to_string(j[i]);
  out << ") in basis PD(e_i)";
  return out.str();
}

json j_json(std::size_t g, const RationalVector& j) { return json{{"g", g}, {"j", rational_array(j)}}; }

}  // namespace torelli
