// Width certificates: a lower-bound chain and an upper-bound family, with the
// numeric maximizer corroborating that the family bound is tight.
#pragma once

#include <optional>

#include "pwidths/domains.hpp"
#include "pwidths/sweepouts.hpp"
#include "pwidths/widths.hpp"
#include "json.hpp"

namespace pwidths {

struct BoundRecord {
  double value = 0.0;
  std::string method;
};

struct WidthCertificate {
  std::string problem;  // "T", "S", or "custom"
  int p = 1;
  BoundRecord lower;
  BoundRecord upper;
  std::optional<MaximizerReport> maximizer;
  std::optional<double> certified;  // the certified value when bounds meet
  std::string closed_form;          // exact expression when known, else empty
  std::vector<std::string> notes;
};

enum class NamedDomain { Triangle, Square };

struct CertifyOptions {
  GridSpec grid{};
  double tolerance = tol::kCertify;
};

// The named problems: T with p = 1..4, S with p = 1..3. Each runs its
// lower-bound chain (slab width, monotonicity, disjoint pieces, length
// quantization) and the matching sweepout family maximizer.
WidthCertificate certify(NamedDomain domain, int p, const CertifyOptions& opt = {});

// p = 1 for an arbitrary convex polygon: lower = upper = slab width.
WidthCertificate certify_width1(const ConvexPolygon& poly);

// All seven named certifications, in order (T,1..4), (S,1..3).
std::vector<WidthCertificate> reproduce_all(const CertifyOptions& opt = {});

bool all_certified(const std::vector<WidthCertificate>& certs);

// |certified - closed form| when both are present.
std::optional<double> certificate_abs_err(const WidthCertificate& cert);

nlohmann::json certificate_to_json(const WidthCertificate& cert);

// problem, p, lower, upper, certified, closed_form, abs_err
std::string summary_csv(const std::vector<WidthCertificate>& certs);

}  // namespace pwidths
