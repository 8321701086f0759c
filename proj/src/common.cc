// Copyright 2026 The ctcdec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctcdec/common.h"

namespace ctcdec {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInternal: return "internal";
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kParse: return "format";
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kBuild: return "build";
    case ErrorKind::kSession: return "session";
    case ErrorKind::kUnsupported: return "unsupported";
  }
  return "internal";
}

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInternal: return 1;
    case ErrorKind::kUsage: return 2;
    case ErrorKind::kIo: return 3;
    case ErrorKind::kParse: return 4;
    case ErrorKind::kInvalidInput: return 5;
    case ErrorKind::kConfig: return 6;
    case ErrorKind::kCapacity: return 7;
    case ErrorKind::kBuild: return 8;
    case ErrorKind::kSession: return 9;
    // Unsupported operations are a configuration problem from the caller's
    // point of view.
    case ErrorKind::kUnsupported: return 6;
  }
  return 1;
}

const char* ParseErrorCodeName(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::kBadMagic: return "bad magic";
    case ParseErrorCode::kBadVersion: return "unsupported version";
    case ParseErrorCode::kTruncated: return "truncated";
    case ParseErrorCode::kTrailingData: return "trailing data";
    case ParseErrorCode::kUnnormalized: return "unnormalized row";
    case ParseErrorCode::kBadValue: return "bad value";
    case ParseErrorCode::kMissingBlank: return "missing blank";
    case ParseErrorCode::kDuplicateSymbol: return "duplicate symbol";
    case ParseErrorCode::kEmptySymbol: return "empty symbol";
    case ParseErrorCode::kBadLine: return "bad line";
    case ParseErrorCode::kMissingSection: return "missing section";
    case ParseErrorCode::kCountMismatch: return "count mismatch";
  }
  return "parse error";
}

}  // namespace ctcdec
