#include <openssl/evp.h>

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "flagcert/certify.hpp"

namespace flagcert {

std::string ordering_digest(const FlagTables& tables) {
  std::vector<std::uint8_t> data;
  auto append = [&](const CanonicalForm& f) {
    const auto b = f.bytes();
    data.insert(data.end(), b.begin(), b.end());
  };
  for (const auto& cls : tables.pairing0.classes) {
    for (int f : cls) append(tables.basis0.forms[f]);
  }
  for (const auto& f : tables.basis1.forms) append(f);

  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw CertificateError("SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

void write_certificate(const Certificate& cert, const ReducedProblem& problem,
                       const ClassCatalog& classes, std::ostream& out) {
  out << "bound (scaled by " << problem.scaling.objective_scale << "): " << cert.bound_scaled << '\n';
  out << "bound: " << cert.bound << '\n';
  for (std::size_t k = 0; k < cert.psd_witnesses.size(); ++k) {
    const auto& w = cert.psd_witnesses[k];
    out << "block " << k + 1 << ": " << (w.psd ? "PSD" : "NOT PSD") << ", rank " << w.rank;
    if (!w.psd) out << " (" << w.failure << ")";
    out << '\n';
  }
  out << "tight classes: " << cert.tight_set.size() << " representatives, "
      << 2 * cert.tight_set.size() << " graphs (reference list: 51 pairs)\n";
  const auto turan = turan_representatives(problem, classes);
  int turan_tight = 0;
  for (int r : turan) {
    if (std::find(cert.tight_set.begin(), cert.tight_set.end(), r) != cert.tight_set.end()) ++turan_tight;
  }
  out << "tripartite-subgraph classes tight: " << turan_tight << " of " << turan.size() << '\n';
  int a = 0, b = 0;
  for (const auto& i : cert.inspections) {
    a += i.property_a;
    b += i.property_b;
  }
  out << "property A holds on " << a << " of " << cert.inspections.size() << " tight classes\n";
  out << "property B holds on " << b << " of " << cert.inspections.size() << " tight classes\n";
  out << "result: " << (cert.certified() ? "CERTIFIED" : "NOT CERTIFIED") << "\n\n";

  nlohmann::json j;
  j["bound_scaled"] = cert.bound_scaled.get_str();
  j["bound"] = cert.bound.get_str();
  j["psd"] = cert.psd();
  j["certified"] = cert.certified();
  auto& tight = j["tight"] = nlohmann::json::array();
  for (const auto& i : cert.inspections) {
    const auto& pair = problem.pairs[i.representative];
    tight.push_back({{"representative", i.representative},
                     {"class", pair.representative},
                     {"form", classes.forms[pair.representative].hex()},
                     {"complement_form", classes.forms[pair.partner].hex()},
                     {"property_a", i.property_a},
                     {"property_b", i.property_b}});
  }
  out << "--- machine-readable ---\n" << j.dump(2) << '\n';
}

}  // namespace flagcert
