// Copyright 2026 The Mosaic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mosaic/error.hpp"

namespace mosaic {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyPrompt: return "EmptyPrompt";
    case ErrorKind::kNoPairsFound: return "NoPairsFound";
    case ErrorKind::kAmbiguousClause: return "AmbiguousClause";
    case ErrorKind::kUnstyledClause: return "UnstyledClause";
    case ErrorKind::kIllegalPhrase: return "IllegalPhrase";
    case ErrorKind::kMalformedSequence: return "MalformedSequence";
    case ErrorKind::kInvalidDistribution: return "InvalidDistribution";
    case ErrorKind::kBadTemplate: return "BadTemplate";
    case ErrorKind::kBadLexicon: return "BadLexicon";
    case ErrorKind::kBackendUnavailable: return "BackendUnavailable";
    case ErrorKind::kBadResponse: return "BadResponse";
    case ErrorKind::kBadRequest: return "BadRequest";
    case ErrorKind::kImageTooLarge: return "ImageTooLarge";
    case ErrorKind::kInvalidImage: return "InvalidImage";
    case ErrorKind::kUnknownEncoding: return "UnknownEncoding";
    case ErrorKind::kEmptyMask: return "EmptyMask";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kConfigError: return "ConfigError";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kMissingArtifacts: return "MissingArtifacts";
  }
  return "Unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyPrompt:
    case ErrorKind::kNoPairsFound:
    case ErrorKind::kAmbiguousClause:
    case ErrorKind::kUnstyledClause:
    case ErrorKind::kIllegalPhrase:
    case ErrorKind::kMalformedSequence:
    case ErrorKind::kInvalidDistribution:
    case ErrorKind::kBadTemplate:
    case ErrorKind::kBadLexicon:
      return 4;
    case ErrorKind::kBackendUnavailable:
    case ErrorKind::kBadResponse:
    case ErrorKind::kBadRequest:
    case ErrorKind::kImageTooLarge:
    case ErrorKind::kUnknownEncoding:
    case ErrorKind::kDimensionMismatch:
      return 3;
    case ErrorKind::kEmptyMask:
      return 5;
    case ErrorKind::kInvalidImage:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kConfigError:
    case ErrorKind::kIoError:
    case ErrorKind::kMissingArtifacts:
      return 2;
  }
  return 1;
}

Error::Error(ErrorKind kind, const std::string& message)
    : Error(kind, std::string{}, message) {}

Error::Error(ErrorKind kind, std::string stage, const std::string& message)
    : std::runtime_error(format(kind, stage, message)),
      kind_(kind),
      stage_(std::move(stage)),
      detail_(message) {}

Error Error::with_stage(std::string stage) const {
  return Error(kind_, std::move(stage), detail_);
}

std::string Error::format(ErrorKind kind, const std::string& stage,
                          const std::string& message) {
  std::string out;
  if (!stage.empty()) out += "[" + stage + "] ";
  out += to_string(kind);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace mosaic
