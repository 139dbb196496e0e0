// Copyright 2026 The pcosrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pcosrisk/service.hpp"

#include <httplib.h>

#include <charconv>
#include <thread>

#include "json_io.hpp"
#include "pcosrisk/csv.hpp"
#include "pcosrisk/whatif.hpp"

namespace pcosrisk {

namespace {

constexpr std::string_view kPrefix = "/api/v1";

[[noreturn]] void Malformed(const std::string& message,
                            const std::string& field = {}) {
  throw ApiError{400, "malformed_request", message, field};
}

Json ParseBody(const ApiRequest& request) {
  Json body;
  try {
    body = Json::parse(request.body);
  } catch (const Json::parse_error& e) {
    Malformed(std::string("request body is not valid JSON: ") + e.what());
  }
  if (!body.is_object()) Malformed("request body must be a JSON object");
  return body;
}

// Values must be numbers; booleans are accepted for Y/N flags.
FeatureMap ReadFeatures(const Json& body, const char* key = "features") {
  auto it = body.find(key);
  if (it == body.end()) Malformed(std::string("missing '") + key + "'", key);
  if (!it->is_object()) {
    Malformed(std::string("'") + key + "' must be an object", key);
  }
  FeatureMap out;
  for (const auto& [name, value] : it->items()) {
    if (value.is_boolean()) {
      out[name] = value.get<bool>() ? 1.0 : 0.0;
    } else if (value.is_number()) {
      out[name] = value.get<double>();
    } else {
      throw ApiError{422, "validation_error",
                     "feature '" + name + "' must be a number", name};
    }
  }
  return out;
}

void RejectUnknown(const ModelBundle& bundle, const FeatureMap& features) {
  for (const auto& [name, value] : features) {
    if (std::find(bundle.feature_names.begin(), bundle.feature_names.end(),
                  name) == bundle.feature_names.end()) {
      throw ApiError{422, "validation_error",
                     "unknown feature '" + name + "'", name};
    }
  }
}

std::string ModelParam(const ModelBundle& bundle, const Json& body) {
  auto it = body.find("model");
  if (it == body.end() || it->is_null()) return bundle.default_model;
  if (!it->is_string()) Malformed("'model' must be a string", "model");
  const auto tag = it->get<std::string>();
  if (!bundle.models.contains(tag)) {
    throw ApiError{422, "validation_error",
                   "model '" + tag + "' is not in the bundle", "model"};
  }
  return tag;
}

std::size_t TopKParam(const Json& body, std::size_t fallback) {
  auto it = body.find("top_k");
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) {
    Malformed("'top_k' must be a positive integer", "top_k");
  }
  return it->get<std::size_t>();
}

std::string Display(const ModelBundle& bundle, const std::string& name) {
  return bundle.manifest.DisplayName(name);
}

Json ContributionsJson(const ModelBundle& bundle, const Explanation& e) {
  Json items = Json::array();
  for (const auto& c : e.items) {
    items.push_back(Json{{"feature", c.name},
                         {"display_name", Display(bundle, c.name)},
                         {"value", c.value},
                         {"phi", c.phi},
                         {"direction", c.direction}});
  }
  return items;
}

Json PatientJson(const ModelBundle& bundle, const Explanation& e) {
  Json items = Json::array();
  for (const auto& c : e.items) {
    const std::string label = Display(bundle, c.name);
    const bool up = c.phi > 0;
    items.push_back(Json{
        {"factor", label},
        {"direction", c.direction},
        {"text", "Your " + label + " (" + csv::FormatNumber(c.value) + ") " +
                     (up ? "pushes the estimated risk up."
                         : "pulls the estimated risk down.")}});
  }
  return items;
}

Json FeatureMapJson(const ModelBundle& bundle, std::span<const double> raw) {
  Json out = Json::object();
  for (std::size_t j = 0; j < raw.size(); ++j) {
    out[bundle.feature_names[j]] = raw[j];
  }
  return out;
}

Json CriterionJson(const CriterionResult& c) {
  Json met = c.state == CriterionState::kIndeterminate ? Json(nullptr)
                                                       : Json(c.met());
  return Json{{"key", c.key},
              {"criterion", c.name},
              {"met", met},
              {"state", CriterionStateName(c.state)},
              {"rationale", c.rationale}};
}

ApiResponse Ok(const ModelBundle& bundle, Json body) {
  body["bundle_hash"] = bundle.hash;
  return ApiResponse{200, body.dump()};
}

}  // namespace

ApiError ToApiError(const Error& e) {
  ApiError out;
  out.code = std::string(ErrorCodeName(e.code()));
  out.message = e.what();
  out.field = e.field();
  switch (e.code()) {
    case ErrorCode::kValidation:
    case ErrorCode::kAssignment:
      out.status = 422;
      break;
    case ErrorCode::kArgument:
      out.status = 400;
      break;
    case ErrorCode::kNotFound:
      out.status = 404;
      break;
    default:
      out.status = 500;
      break;
  }
  return out;
}

ApiHandler::ApiHandler(std::shared_ptr<const ModelBundle> bundle)
    : bundle_(std::move(bundle)) {
  if (!bundle_) throw Error(ErrorCode::kArgument, "service needs a bundle");
}

ApiResponse ApiHandler::ErrorResponse(const ApiError& error) const {
  Json err{{"code", error.code}, {"message", error.message}};
  err["field"] = error.field.empty() ? Json(nullptr) : Json(error.field);
  return ApiResponse{error.status,
                     Json{{"error", err}, {"bundle_hash", bundle_->hash}}.dump()};
}

ApiResponse ApiHandler::Handle(const ApiRequest& request) const {
  using Route = ApiResponse (ApiHandler::*)(const ApiRequest&) const;
  struct Entry {
    std::string_view method;
    std::string_view path;
    Route route;
  };
  static constexpr Entry kRoutes[] = {
      {"POST", "/predict", &ApiHandler::Predict},
      {"POST", "/explain", &ApiHandler::Explain},
      {"POST", "/whatif", &ApiHandler::WhatIfRoute},
      {"POST", "/rotterdam", &ApiHandler::Rotterdam},
      {"GET", "/reports/fairness", &ApiHandler::FairnessReport},
      {"GET", "/reports/calibration", &ApiHandler::CalibrationReport},
      {"GET", "/reports/dca", &ApiHandler::DcaReport},
      {"GET", "/model/metadata", &ApiHandler::Metadata},
  };
  try {
    std::string_view path = request.path;
    if (path.starts_with(kPrefix)) {
      path.remove_prefix(kPrefix.size());
      bool path_known = false;
      for (const auto& e : kRoutes) {
        if (e.path != path) continue;
        path_known = true;
        if (e.method == request.method) return (this->*e.route)(request);
      }
      if (path_known) {
        return ErrorResponse(ApiError{405, "method_not_allowed",
                                      request.method + " is not supported on " +
                                          request.path,
                                      ""});
      }
    }
    return ErrorResponse(
        ApiError{404, "not_found", "no endpoint at " + request.path, ""});
  } catch (const ApiError& e) {
    return ErrorResponse(e);
  } catch (const Error& e) {
    return ErrorResponse(ToApiError(e));
  } catch (const std::exception& e) {
    return ErrorResponse(ApiError{500, "internal_error", e.what(), ""});
  }
}

ApiResponse ApiHandler::Predict(const ApiRequest& request) const {
  const ModelBundle& b = *bundle_;
  const Json body = ParseBody(request);
  const FeatureMap features = ReadFeatures(body);
  const std::string tag = ModelParam(b, body);
  const double p = PredictCalibrated(b, features, tag);
  Json groups = Json::array();
  for (const auto& [attribute, group] : ProfileSubgroups(b, features)) {
    groups.push_back(Json{{"attribute", attribute}, {"group", group}});
  }
  return Ok(b, Json{{"model", tag},
                    {"probability", p},
                    {"subgroups", groups},
                    {"fairness_flags", FlagsForProfile(b, features)},
                    {"disclaimer", kScreeningDisclaimer}});
}

ApiResponse ApiHandler::Explain(const ApiRequest& request) const {
  const ModelBundle& b = *bundle_;
  const Json body = ParseBody(request);
  const FeatureMap features = ReadFeatures(body);
  const std::size_t k = TopKParam(body, 10);
  const std::vector<double> raw = ProfileVector(b, features);
  const AttributionSet att = ExplainProfile(b, raw);
  const Explanation clinician = TopKExplanation(att, k, b.feature_names, raw);
  const Explanation patient = TopKExplanation(att, 3, b.feature_names, raw);
  return Ok(b, Json{{"model", "rf"},
                    {"base_value", att.base_value},
                    {"output", att.output},
                    {"all_zero", clinician.all_zero},
                    {"clinician", ContributionsJson(b, clinician)},
                    {"patient", PatientJson(b, patient)},
                    {"disclaimer", kScreeningDisclaimer}});
}

ApiResponse ApiHandler::WhatIfRoute(const ApiRequest& request) const {
  const ModelBundle& b = *bundle_;
  const Json body = ParseBody(request);
  WhatIfScenario scenario;
  scenario.base = ReadFeatures(body);
  scenario.overrides = body.contains("overrides")
                           ? ReadFeatures(body, "overrides")
                           : FeatureMap{};
  RejectUnknown(b, scenario.overrides);
  if (auto it = body.find("recompute_bmi"); it != body.end()) {
    if (!it->is_boolean()) {
      Malformed("'recompute_bmi' must be a boolean", "recompute_bmi");
    }
    scenario.recompute_bmi = it->get<bool>();
  }
  scenario.model_tag = ModelParam(b, body);
  scenario.top_k = TopKParam(body, 3);
  const WhatIfResult r = WhatIf(b, scenario);
  return Ok(b, Json{{"model", r.model_tag},
                    {"baseline_risk", r.baseline_risk},
                    {"scenario_risk", r.scenario_risk},
                    {"delta", r.delta},
                    {"scenario_features", FeatureMapJson(b, r.scenario_features)},
                    {"baseline_top", ContributionsJson(b, r.baseline_top)},
                    {"scenario_top", ContributionsJson(b, r.scenario_top)},
                    {"disclaimer", kScreeningDisclaimer}});
}

ApiResponse ApiHandler::Rotterdam(const ApiRequest& request) const {
  const ModelBundle& b = *bundle_;
  const Json body = ParseBody(request);
  const FeatureMap features = ReadFeatures(body);
  RejectUnknown(b, features);
  const RotterdamAssessment a = EvaluateRotterdam(features, b.clinical);
  const SupportiveIndicators s = EvaluateSupportiveIndicators(features, b.clinical);
  Json indicators = Json::array();
  for (const auto& r : s.readings) {
    indicators.push_back(
        Json{{"name", r.name},
             {"unit", r.unit},
             {"present", r.present},
             {"value", r.present ? Json(r.value) : Json(nullptr)},
             {"low", OptionalToJson(r.low)},
             {"high", OptionalToJson(r.high)},
             {"in_band", r.present ? Json(r.in_band) : Json(nullptr)}});
  }
  return Ok(b, Json{{"criteria",
                     {CriterionJson(a.oligo_anovulation),
                      CriterionJson(a.hyperandrogenism), CriterionJson(a.pcom)}},
                    {"criteria_met_count", a.criteria_met_count},
                    {"threshold", b.clinical.threshold},
                    {"meets_threshold", a.meets_threshold},
                    {"statement", a.statement},
                    {"supportive_indicators", indicators},
                    {"disclaimer", kScreeningDisclaimer}});
}

ApiResponse ApiHandler::FairnessReport(const ApiRequest&) const {
  const ModelBundle& b = *bundle_;
  if (b.fairness.attributes.empty()) {
    throw ApiError{404, "not_found", "bundle has no fairness report",
                   "fairness"};
  }
  return Ok(b, Json{{"model", b.fairness.model_id},
                    {"report", b.fairness},
                    {"flags", b.flags},
                    {"gap_threshold", b.policy.gap_threshold},
                    {"min_group", b.policy.min_group},
                    {"columns", {"Group", "Category", "Accuracy", "Precision",
                                 "Recall", "Size"}}});
}

namespace {

template <typename Map>
const typename Map::mapped_type& Section(const Map& map, const ApiRequest& r,
                                         const std::string& fallback,
                                         const char* section,
                                         std::string* tag_out) {
  auto p = r.params.find("model");
  const std::string tag = p == r.params.end() ? fallback : p->second;
  auto it = map.find(tag);
  if (it == map.end()) {
    throw ApiError{404, "not_found",
                   std::string("bundle has no ") + section + " data for '" +
                       tag + "'",
                   "model"};
  }
  *tag_out = tag;
  return it->second;
}

}  // namespace

ApiResponse ApiHandler::CalibrationReport(const ApiRequest& request) const {
  const ModelBundle& b = *bundle_;
  std::string tag;
  const BinnedReliability& curve =
      Section(b.reliability, request, b.default_model, "calibration", &tag);
  Json summary = nullptr;
  for (const auto& m : b.metrics) {
    if (m.tag == tag) {
      summary = Json{{"accuracy", m.accuracy},
                     {"brier", m.brier},
                     {"ece_10", m.ece_10},
                     {"ece_15", m.ece_15},
                     {"calibration_slope", OptionalToJson(m.calibration_slope)}};
    }
  }
  return Ok(b, Json{{"model", tag},
                    {"bins", b.reliability_bins},
                    {"reliability", curve},
                    {"metrics", summary}});
}

ApiResponse ApiHandler::DcaReport(const ApiRequest& request) const {
  const ModelBundle& b = *bundle_;
  std::string tag;
  const auto& curve = Section(b.dca, request, b.default_model, "DCA", &tag);
  return Ok(b, Json{{"model", tag}, {"points", curve}});
}

ApiResponse ApiHandler::Metadata(const ApiRequest&) const {
  const ModelBundle& b = *bundle_;
  const SchemaManifest& m = b.manifest;
  Json features = Json::array();
  for (std::size_t j = 0; j < b.feature_names.size(); ++j) {
    const auto& name = b.feature_names[j];
    Json f{{"name", name},
           {"display_name", m.DisplayName(name)},
           {"role", b.roles[j]},
           {"whatif_control",
            std::find(m.whatif_controls.begin(), m.whatif_controls.end(),
                      name) != m.whatif_controls.end()}};
    auto bound = m.bounds.find(name);
    f["bounds"] = bound == m.bounds.end()
                      ? Json(nullptr)
                      : Json{bound->second.min, bound->second.max};
    features.push_back(std::move(f));
  }
  Json tags = Json::array();
  for (const auto& [tag, model] : b.models) tags.push_back(tag);
  Json sensitive = Json::array();
  for (const auto& s : m.sensitive) {
    sensitive.push_back(Json{{"attribute", s.attribute},
                             {"column", s.column},
                             {"groups", s.Labels()}});
  }
  Json metrics = Json::array();
  for (const auto& s : b.metrics) {
    metrics.push_back(Json{{"tag", s.tag},
                           {"model", s.model},
                           {"calibration", s.method},
                           {"accuracy", s.accuracy},
                           {"precision", OptionalToJson(s.precision)},
                           {"recall", OptionalToJson(s.recall)},
                           {"brier", s.brier},
                           {"ece_10", s.ece_10},
                           {"ece_15", s.ece_15},
                           {"calibration_slope",
                            OptionalToJson(s.calibration_slope)}});
  }
  Json bmi = nullptr;
  if (m.bmi) bmi = *m.bmi;
  return Ok(b, Json{{"format_version", b.format_version},
                    {"model", b.default_model},
                    {"models", tags},
                    {"seed", b.info.seed},
                    {"training", {{"raw_rows", b.info.raw_rows},
                                  {"clean_rows", b.info.clean_rows},
                                  {"train_rows", b.info.train_rows},
                                  {"test_rows", b.info.test_rows},
                                  {"test_fraction", b.info.test_fraction},
                                  {"folds", b.info.folds}}},
                    {"metrics", metrics},
                    {"features", features},
                    {"sensitive", sensitive},
                    {"bmi", bmi},
                    {"disclaimer", kScreeningDisclaimer}});
}

// ---------------------------------------------------------------------------

BindAddress ParseBindAddress(std::string_view text) {
  BindAddress out;
  std::string_view port = text;
  if (auto colon = text.rfind(':'); colon != std::string_view::npos) {
    if (colon > 0) out.host = std::string(text.substr(0, colon));
    port = text.substr(colon + 1);
  }
  int value = -1;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || ptr != port.data() + port.size() || value < 0 ||
      value > 65535) {
    throw Error(ErrorCode::kArgument,
                "bind address '" + std::string(text) + "' has no valid port",
                "bind");
  }
  out.port = value;
  return out;
}

struct HttpService::Impl {
  explicit Impl(std::shared_ptr<const ModelBundle> b) : handler(std::move(b)) {}

  ApiHandler handler;
  httplib::Server server;
  std::thread thread;
};

HttpService::HttpService(std::shared_ptr<const ModelBundle> bundle)
    : impl_(std::make_unique<Impl>(std::move(bundle))) {
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.params.emplace(k, v);
    r.body = req.body;
    const ApiResponse out = impl_->handler.Handle(r);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  impl_->server.Get(R"(/.*)", dispatch);
  impl_->server.Post(R"(/.*)", dispatch);
  impl_->server.Put(R"(/.*)", dispatch);
  impl_->server.Delete(R"(/.*)", dispatch);
}

HttpService::~HttpService() { Stop(); }

int HttpService::Start(const BindAddress& address) {
  int port = address.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(address.host);
  } else if (!impl_->server.bind_to_port(address.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw Error(ErrorCode::kIo,
                "cannot bind " + address.host + ":" +
                    std::to_string(address.port),
                "bind");
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void HttpService::Stop() {
  impl_->server.stop();
  Wait();
}

void HttpService::Wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace pcosrisk
