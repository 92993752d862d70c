/*
 * Copyright 2026 The shrq Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SHRQ_SRC_PAIRING_INTERNAL_H_
#define SHRQ_SRC_PAIRING_INTERNAL_H_

#include <memory>

#include "shrq/pairing.h"

namespace shrq::internal {

std::shared_ptr<const BilinearGroup> MakeTransparentGroup(
    const GroupDescriptor& descriptor);
std::shared_ptr<const BilinearGroup> MakeCurveA1Group(
    const GroupDescriptor& descriptor);

}  // namespace shrq::internal

#endif  // SHRQ_SRC_PAIRING_INTERNAL_H_
