#pragma once

#include "pushmog/clustering.hpp"
#include "pushmog/error.hpp"
#include "pushmog/geometry.hpp"
#include "pushmog/grasping.hpp"
#include "pushmog/harness.hpp"
#include "pushmog/metrics.hpp"
#include "pushmog/pushing.hpp"
#include "pushmog/render.hpp"
#include "pushmog/scene.hpp"
#include "pushmog/trace.hpp"
