#include "itercert/certdoc.hpp"

#include <chrono>
#include <fstream>

namespace itercert {
namespace {

using nlohmann::json;

json spec_to_json(const IlrsSpec& s) {
  json j;
  j["name"] = s.name();
  j["order"] = s.order();
  json coeffs = json::array(), initial = json::array();
  for (const Int& a : s.coeffs()) coeffs.push_back(a.str());
  for (const Int& r : s.initial()) initial.push_back(r.str());
  j["coeffs"] = std::move(coeffs);
  j["inhom"] = s.inhom().str();
  j["initial"] = std::move(initial);
  return j;
}

IlrsSpec spec_from_json(const json& j) {
  std::vector<Int> coeffs, initial;
  for (const auto& a : j.at("coeffs")) coeffs.emplace_back(a.get<std::string>());
  for (const auto& r : j.at("initial"))
    initial.emplace_back(r.get<std::string>());
  return IlrsSpec::validate(j.at("order").get<int>(), std::move(coeffs),
                            Int(j.at("inhom").get<std::string>()),
                            std::move(initial),
                            j.value("name", std::string{}));
}

json chain_to_json(const std::vector<IlrsSpec>& chain) {
  json arr = json::array();
  for (const auto& s : chain) arr.push_back(spec_to_json(s));
  return arr;
}

std::vector<IlrsSpec> chain_from_json(const json& arr) {
  std::vector<IlrsSpec> chain;
  for (const auto& j : arr) chain.push_back(spec_from_json(j));
  return chain;
}

json entries_to_json(const std::vector<DivisibilityEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries) {
    arr.push_back({{"h", e.h},
                   {"p", e.p.str()},
                   {"period", e.period.str()},
                   {"tower_m", e.tower_m.str()}});
  }
  return arr;
}

std::vector<DivisibilityEntry> entries_from_json(const json& arr) {
  std::vector<DivisibilityEntry> entries;
  for (const auto& j : arr) {
    entries.push_back({j.at("h").get<long long>(),
                       Int(j.at("p").get<std::string>()),
                       Int(j.at("period").get<std::string>()),
                       Int(j.at("tower_m").get<std::string>())});
  }
  return entries;
}

json evidence_to_json(const HypothesisEvidence& ev) {
  return {{"window", ev.window},
          {"all_positive", ev.all_positive},
          {"increasing_tail", ev.increasing_tail}};
}

HypothesisEvidence evidence_from_json(const json& j) {
  return {j.at("window").get<std::uint64_t>(),
          j.at("all_positive").get<bool>(),
          j.at("increasing_tail").get<bool>()};
}

json divisibility_fields(const DivisibilityCertificate& c) {
  json j;
  j["chain"] = chain_to_json(c.chain);
  j["H"] = c.H.str();
  j["m"] = c.m.str();
  j["entries"] = entries_to_json(c.entries);
  j["L"] = c.L.str();
  j["strict_paper"] = c.strict_paper;
  j["evidence"] = evidence_to_json(c.evidence);
  return j;
}

DivisibilityCertificate divisibility_from_fields(const json& j) {
  DivisibilityCertificate c;
  c.chain = chain_from_json(j.at("chain"));
  c.H = Int(j.at("H").get<std::string>());
  c.m = Int(j.at("m").get<std::string>());
  c.entries = entries_from_json(j.at("entries"));
  c.L = Int(j.at("L").get<std::string>());
  c.strict_paper = j.at("strict_paper").get<bool>();
  c.evidence = evidence_from_json(j.at("evidence"));
  return c;
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

json certificate_to_json(const Certificate& cert) {
  json doc;
  doc["schema_version"] = kCertificateSchemaVersion;

  if (const auto* dc = std::get_if<DivisibilityCertificate>(&cert)) {
    doc["variant"] = "divisibility";
    doc.update(divisibility_fields(*dc));
  } else if (const auto* ic = std::get_if<PrimeFreeIntervalCertificate>(&cert)) {
    doc["variant"] = "prime_free_interval";
    doc["chain"] = chain_to_json(ic->chain);
    doc["m"] = ic->m.str();
    doc["H"] = ic->H.str();
    json primes = json::array();
    for (const Int& p : ic->primes) primes.push_back(p.str());
    doc["primes"] = std::move(primes);
    doc["entries"] = entries_to_json(ic->entries);
    doc["L"] = ic->L.str();
    doc["n_star"] = ic->n_star.str();
    doc["D"] = ic->D.str();
    if (ic->paper_witness)
      doc["paper_witness"] = ic->paper_witness->str();
    else
      doc["paper_witness"] = nullptr;
    doc["size_evidence"] = {{"threshold_index", ic->size.threshold_index.str()},
                            {"window", ic->size.window}};
    doc["strict_paper"] = ic->strict_paper;
  } else {
    const auto& pc = std::get<PisotFloorCertificate>(cert);
    doc["variant"] = "pisot_floor";
    json poly = json::array();
    for (const Int& a : pc.poly.coeffs()) poly.push_back(a.str());
    doc["poly"] = std::move(poly);
    doc["kind"] = pc.kind;
    doc["trace"] = spec_to_json(pc.trace);
    doc["inner_chain"] = chain_to_json(pc.inner_chain);
    doc["G"] = pc.G.str();
    doc["H_user"] = pc.H_user.str();
    doc["H_effective"] = pc.H_effective.str();
    doc["base"] = divisibility_fields(pc.base);
  }

  doc["metadata"] = {{"created", timestamp_now()},
                     {"producer", "itercert"}};
  return doc;
}

Certificate certificate_from_json(const json& doc) {
  if (doc.at("schema_version").get<int>() != kCertificateSchemaVersion)
    throw InputError("unsupported certificate schema version");
  const std::string variant = doc.at("variant").get<std::string>();

  if (variant == "divisibility") return divisibility_from_fields(doc);

  if (variant == "prime_free_interval") {
    PrimeFreeIntervalCertificate c;
    c.chain = chain_from_json(doc.at("chain"));
    c.m = Int(doc.at("m").get<std::string>());
    c.H = Int(doc.at("H").get<std::string>());
    for (const auto& p : doc.at("primes"))
      c.primes.emplace_back(p.get<std::string>());
    c.entries = entries_from_json(doc.at("entries"));
    c.L = Int(doc.at("L").get<std::string>());
    c.n_star = Int(doc.at("n_star").get<std::string>());
    c.D = Int(doc.at("D").get<std::string>());
    if (!doc.at("paper_witness").is_null())
      c.paper_witness = Int(doc.at("paper_witness").get<std::string>());
    c.size.threshold_index =
        Int(doc.at("size_evidence").at("threshold_index").get<std::string>());
    c.size.window = doc.at("size_evidence").at("window").get<std::uint64_t>();
    c.strict_paper = doc.at("strict_paper").get<bool>();
    return c;
  }

  if (variant == "pisot_floor") {
    std::vector<Int> coeffs;
    for (const auto& a : doc.at("poly"))
      coeffs.emplace_back(a.get<std::string>());
    MinPoly poly = MinPoly::validate(std::move(coeffs));
    PisotFloorCertificate c{poly,
                            doc.at("kind").get<std::string>(),
                            spec_from_json(doc.at("trace")),
                            chain_from_json(doc.at("inner_chain")),
                            Int(doc.at("G").get<std::string>()),
                            Int(doc.at("H_user").get<std::string>()),
                            Int(doc.at("H_effective").get<std::string>()),
                            divisibility_from_fields(doc.at("base"))};
    return c;
  }
  throw InputError("unknown certificate variant: " + variant);
}

void write_certificate(const std::string& path, const Certificate& cert) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write certificate: " + path);
  out << certificate_to_json(cert).dump(2) << '\n';
}

Certificate read_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read certificate: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate parse error: ") + e.what());
  }
  try {
    return certificate_from_json(doc);
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate schema error: ") + e.what());
  }
}

json canonical_form(json doc) {
  doc.erase("metadata");
  return doc;
}

}  // namespace itercert
