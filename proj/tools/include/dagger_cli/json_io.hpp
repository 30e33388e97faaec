#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include <dagger/localization.hpp>
#include <dagger/normed_core.hpp>
#include <dagger/series.hpp>
#include <dagger/tensor.hpp>

namespace dagger::cli {

using json = nlohmann::ordered_json;

/// Malformed input; `pointer` is the JSON pointer of the offending value.
class InputError : public std::runtime_error {
 public:
  InputError(std::string pointer, const std::string& message)
      : std::runtime_error(message + " at " + (pointer.empty() ? std::string("/") : pointer)), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Parses a file; syntax errors are reported at the document root with the byte offset.
json load_json_file(const std::string& path);

Rational read_rational(const json& j, const std::string& at);
BanachRingDesc read_ring(const json& j, const std::string& at);
std::vector<Rational> read_rationals(const json& j, const std::string& at);
/// A single rational broadcasts to every variable.
PolyRadius read_radius(const std::string& text, std::size_t variables);
WeightedFreeModule read_module(const json& j, const std::string& at);
Matrix read_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& at);
TruncatedSeries read_series(const json& j, const std::string& at, const BanachRingDesc& default_ring);
DaggerPresentation read_algebra(const json& j, const std::string& at);
LocalizationSpec read_spec(const json& j, const std::string& at, const DaggerPresentation& algebra);
TensorElement read_tensor_element(const json& j, const std::string& at, const WeightedFreeModule& left,
                                  const WeightedFreeModule& right);

json to_json(const Rational& q);
json to_json(const NormValue& v);
json to_json(const std::vector<Rational>& v);
json to_json(const TruncatedSeries& f);
json to_json(const WeightedFreeModule& m);
json to_json(const Matrix& m);
json to_json(const DaggerPresentation& a);

}  // namespace dagger::cli
