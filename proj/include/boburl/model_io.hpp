#ifndef BOBURL_MODEL_IO_HPP
#define BOBURL_MODEL_IO_HPP

#include <filesystem>

#include "boburl/neural_net.hpp"

namespace boburl {

// Line-oriented text model file, format "BOBURL 1":
//
//   BOBURL 1
//   dropout <ratio>
//   layer <out> <in>
//   <out lines of in space-separated weights>
//   <one line of out biases>
//   ... (three layer blocks)
//
// Reals are written as shortest round-trip decimals, so save followed by
// load reproduces every parameter bit-exactly. The file is written to a
// temp path and renamed, so readers never observe a partial model.
void save_model(const MlpModel& model, const std::filesystem::path& file);

// Throws DataError on a bad magic/version line, malformed numerics (with
// the line number), or layer dimensions that do not chain. Unless
// allow_any_dims is set, dimensions must be the canonical
// 512 -> 256 -> 256 -> 2.
MlpModel load_model(const std::filesystem::path& file,
                    bool allow_any_dims = false);

}  // namespace boburl

#endif  // BOBURL_MODEL_IO_HPP
