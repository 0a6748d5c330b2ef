#pragma once

// Everything at once.

#include "qgamma/scalars.hpp"
#include "qgamma/series.hpp"
#include "qgamma/linalg.hpp"
#include "qgamma/ring.hpp"
#include "qgamma/ring_json.hpp"
#include "qgamma/jfunction.hpp"
#include "qgamma/laurent.hpp"
#include "qgamma/schubert.hpp"
#include "qgamma/asymptotics.hpp"
#include "qgamma/oscillatory.hpp"
#include "qgamma/exceptional.hpp"
#include "qgamma/spaces.hpp"
