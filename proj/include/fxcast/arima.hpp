#pragma once

#include <fxcast/arima/correlogram.hpp>
#include <fxcast/arima/estimate.hpp>
#include <fxcast/arima/forecast.hpp>
#include <fxcast/arima/kalman.hpp>
#include <fxcast/arima/model.hpp>
