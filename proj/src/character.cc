// Copyright 2026 The thetazero Authors.
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

#include "thetazero/character.h"

#include "thetazero/errors.h"

namespace tz {

Character::Character(FieldPtr field, Fq c) : field_(std::move(field)), c_(c) {
  Require(c.v != 0, ErrorCode::kInvalidArgument, "psi_c needs c != 0");
}

CharValue Character::operator()(Fq x) const {
  return CharValue::Zeta(field_->p(), field_->q(), Exponent(x));
}

}  // namespace tz
