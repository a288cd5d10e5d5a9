#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prone::cli {

/// Entry point shared by the `prone` executable and the tests. args excludes
/// the program name. Returns the process exit code.
///
///   prone cluster --input <path> --k <int> [--format csv|sparse] [--header] [--z <real>]
///                 [--algo prone|prone-variance|prone-covariance|kmeanspp|boosted]
///                 [--alpha <real>] [--seed <u64>] [--assign-nearest] [--output <prefix>]
///                 [--coreset-out <path>] [--stats]
///   prone bench   --suite direct|coreset|boosted --dataset <name|path> --ks 10,100
///                 [--reps <int>] [--seed <u64>] [--jobs <int>] --out <path>
///   prone gen gaussian-adversarial --m <int> [--seed <u64>] --out <path>
///   prone gen mixture --k <int> --per-cluster <int> --d <int> --separation <real>
///                 [--seed <u64>] --out <path>
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prone::cli
