#ifndef ITERCERT_CERTDOC_HPP
#define ITERCERT_CERTDOC_HPP

#include <string>

#include <json.hpp>

#include "itercert/certify.hpp"

namespace itercert {

/// Certificate documents: JSON with an explicit schema version; all big
/// integers serialized as decimal strings.
inline constexpr int kCertificateSchemaVersion = 1;

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& doc);

void write_certificate(const std::string& path, const Certificate& cert);
Certificate read_certificate(const std::string& path);

/// The document without volatile metadata (timestamps); this is the
/// canonical form that round-trips bit-exactly.
nlohmann::json canonical_form(nlohmann::json doc);

}  // namespace itercert

#endif
