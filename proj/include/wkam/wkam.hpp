#pragma once

#include "numeric.hpp"
#include "extended.hpp"
#include "instance.hpp"
#include "tropical.hpp"
#include "critical.hpp"
#include "potential.hpp"
#include "barrier.hpp"
#include "subsolution.hpp"
#include "models.hpp"
#include "io.hpp"
#include "analysis.hpp"
#include "oracle.hpp"
#include "verify.hpp"
