// stereorange.hpp - convenience include for the whole toolkit.
#pragma once

#include "stereorange/block_match.hpp"
#include "stereorange/camera.hpp"
#include "stereorange/csv.hpp"
#include "stereorange/image.hpp"
#include "stereorange/misalignment.hpp"
#include "stereorange/pipeline.hpp"
#include "stereorange/ranging.hpp"
#include "stereorange/render.hpp"
#include "stereorange/scene_io.hpp"
