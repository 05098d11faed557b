#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "cyvhs/cohomology.hpp"
#include "cyvhs/forms.hpp"
#include "cyvhs/frames.hpp"

namespace cyvhs {

using json = nlohmann::json;

// Raised for malformed documents (wrong shapes, bad rationals, missing keys).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json to_json(const Rational& r);
json to_json(const Vector& v);
json to_json(const Matrix& m);
Rational rational_from_json(const json& j);
Vector vector_from_json(const json& j, std::size_t expect_size);
Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

json vhs_to_json(const CanonicalVHS& vhs);
CanonicalVHS vhs_from_json(const json& j);

json charform_to_json(const CharForm& f);
json model_coeffs_to_json(const ModelCoeffs& m);
json structure_report_to_json(const StructureReport& r);
json cohomology_to_json(const CochainComplexSlice& cx, const GradedEnd& graded, int weight);

json frame_to_json(const FrameJet& f);
FrameJet frame_from_json(const json& j);
json verdict_to_json(const Verdict& v);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& j);

}  // namespace cyvhs
