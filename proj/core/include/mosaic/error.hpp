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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mosaic {

enum class ErrorKind {
  // prompt segmentation
  kEmptyPrompt,
  kNoPairsFound,
  kAmbiguousClause,
  kUnstyledClause,
  kIllegalPhrase,
  kMalformedSequence,
  kInvalidDistribution,
  kBadTemplate,
  kBadLexicon,
  // backends
  kBackendUnavailable,
  kBadResponse,
  kBadRequest,
  kImageTooLarge,
  kInvalidImage,
  kUnknownEncoding,
  kEmptyMask,
  kDimensionMismatch,
  // orchestration
  kInvalidArgument,
  kConfigError,
  kIoError,
  kMissingArtifacts,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code the CLI reports for an error of this kind.
/// 2 config/IO, 3 backend, 4 parse, 5 segmentation.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  Error(ErrorKind kind, std::string stage, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Copy of this error tagged with a pipeline stage name.
  Error with_stage(std::string stage) const;

 private:
  static std::string format(ErrorKind kind, const std::string& stage,
                            const std::string& message);

  ErrorKind kind_;
  std::string stage_;
  std::string detail_;
};

}  // namespace mosaic
