// Copyright 2026 The condage Authors
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

#include "condage/error.hpp"

namespace condage {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnexpectedColumn: return "UnexpectedColumn";
    case ErrorCode::UnknownLevel: return "UnknownLevel";
    case ErrorCode::NegativeAge: return "NegativeAge";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::MalformedNumeric: return "MalformedNumeric";
    case ErrorCode::MalformedStatus: return "MalformedStatus";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::InvalidSchema: return "InvalidSchema";
    case ErrorCode::Io: return "Io";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::SingleCluster: return "SingleCluster";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::ZeroPhysicalAge: return "ZeroPhysicalAge";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::EmptySimilars: return "EmptySimilars";
    case ErrorCode::ZeroBaseRate: return "ZeroBaseRate";
    case ErrorCode::ZeroObservedInterval: return "ZeroObservedInterval";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientFailures: return "InsufficientFailures";
    case ErrorCode::TooFewPerClass: return "TooFewPerClass";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ModeDataMismatch: return "ModeDataMismatch";
    case ErrorCode::InvalidArtifact: return "InvalidArtifact";
  }
  return "Unknown";
}

}  // namespace condage
