// Copyright 2026 The reqshield Authors.
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

// Usage:
//   reqshield compile -r requirements.txt [-n 4]
//   reqshield apply   -r requirements.txt -i preds.csv -o out.csv [--report
//   r.json] reqshield check   -r requirements.txt -i preds.csv

#include <iostream>
#include <string>
#include <vector>

#include "reqshield/cli.h"

int main(int argc, char** argv) {
  return reqshield::RunCli(std::vector<std::string>(argv, argv + argc),
                           std::cout, std::cerr);
}
