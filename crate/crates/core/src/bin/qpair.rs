// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(qpair::cli::run(std::env::args_os()));
}
