// Copyright 2026 The ALSO Authors
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

#ifndef ALSO_PARALLEL_H
#define ALSO_PARALLEL_H

#include <cstddef>
#include <functional>

namespace also {

/// Worker count: ALSO_WORKERS if set and positive, else hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, count) on up to `workers` threads (0 = worker_count()).
/// Results must not depend on which thread runs which index. The first
/// exception thrown by any call is rethrown after all workers finish. Calls made
/// from inside a worker run serially on that worker.
void parallel_for(size_t count, const std::function<void(size_t)> &fn, int workers = 0);

}  // namespace also

#endif
