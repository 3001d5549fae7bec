#pragma once

#include "halg/constructions.hpp"
#include "halg/fdmodule.hpp"
#include "halg/fp.hpp"
#include "halg/gorenstein.hpp"
#include "halg/homology.hpp"
#include "halg/matrix.hpp"
#include "halg/module.hpp"
#include "halg/present.hpp"
#include "halg/quiver.hpp"
#include "halg/ring.hpp"
#include "halg/serialize.hpp"
#include "halg/stablehom.hpp"
#include "halg/zmat.hpp"

namespace halg {
inline constexpr const char* toolkit_version = "halg 0.1.0";
}
