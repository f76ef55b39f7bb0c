#pragma once

#include "eisense/acquisition.hpp"
#include "eisense/circuit.hpp"
#include "eisense/circuit_fit.hpp"
#include "eisense/classifier.hpp"
#include "eisense/constants.hpp"
#include "eisense/dielectric.hpp"
#include "eisense/error.hpp"
#include "eisense/io.hpp"
#include "eisense/regression.hpp"
#include "eisense/spectral.hpp"
#include "eisense/version.hpp"
