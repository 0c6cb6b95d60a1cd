// Copyright 2026 The pigeonhole Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use clap::Parser;
use pigeonhole::cli::{run, RunConfig};

fn main() {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let code = run(&config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
