/* Copyright 2026 The discgrp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace discgrp {

enum class ErrorCode {
  NotHermitian,
  NotPositiveDefinite,
  NonFinite,
  ShapeMismatch,
  UnknownVertex,
  DuplicateName,
  ZeroMultiplicity,
  OutsideDisc,
  SingularResolvent,
  SingularU,
  GIsIdentity,
  HypothesesNotMet,
  NotInCommutant,
  RankZero,
  ParseError,
  SuiteHypothesesNotMet,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::ZeroMultiplicity: return "ZeroMultiplicity";
    case ErrorCode::OutsideDisc: return "OutsideDisc";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::SingularU: return "SingularU";
    case ErrorCode::GIsIdentity: return "GIsIdentity";
    case ErrorCode::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorCode::NotInCommutant: return "NotInCommutant";
    case ErrorCode::RankZero: return "RankZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SuiteHypothesesNotMet: return "SuiteHypothesesNotMet";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace discgrp
