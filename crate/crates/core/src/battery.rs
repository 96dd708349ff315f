//! Coupled electrical-thermal-aging model of the traction battery pack.
//!
//! Electrical: Rint equivalent circuit,
//!   V_term = V_oc - I*R,   P = V_oc*I - I^2*R
//! State of charge: coulomb counting,
//!   SoC' = SoC - I*ts / (3600*Q)
//! Aging: semi-empirical capacity-fade law driven by current magnitude,
//! C-rate, absolute temperature, and accumulated loss,
//!   dQ_loss = 9.78e-4 * (|I|*ts/3600) * exp((-15162 + 1516*C)/(0.849*R_gas*T_K)) * Q_loss^-0.1779
//! with Q_loss the capacity-loss fraction (end of life at 0.2).
//! Thermal: lumped pack,
//!   T' = T + ts*(Q_gen - Q_cool)/(N_cell*C_cell),
//!   Q_gen = I^2*R + I*T_K*dV/dT
//!
//! Sign convention: positive current discharges the pack.

use crate::lookup::{Table1d, Table2d, TableError};
use thiserror::Error;

/// Universal gas constant [J/(mol*K)].
pub const GAS_CONSTANT: f64 = 8.314;

pub const CELSIUS_TO_KELVIN: f64 = 273.15;

/// Capacity-loss fraction at end of life (20% of initial capacity).
pub const END_OF_LIFE_FRACTION: f64 = 0.2;

/// Seed capacity loss for a fresh pack. The fade law has a singularity at
/// zero accumulated loss, so trajectories start from this small value.
pub const Q_LOSS_SEED: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum BatteryError {
    #[error("demanded power {p_bat:.1} W exceeds pack capability (V_oc={v_oc:.1} V, R={r:.4} ohm)")]
    PowerInfeasible { p_bat: f64, v_oc: f64, r: f64 },
    #[error("capacity loss must be positive, got {0}")]
    AgingDomain(f64),
    #[error("invalid battery table: {0}")]
    Table(#[from] TableError),
}

/// Direction used for the internal-resistance lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurrentDirection {
    Discharge,
    Charge,
}

/// Pack-level parameters and lookup curves.
#[derive(Debug, Clone)]
pub struct BatteryParams {
    /// Pack capacity [Ah]
    pub capacity_pack: f64,
    /// Pack nominal voltage [V]
    pub nominal_voltage: f64,
    /// Number of cells in the pack
    pub n_cells: f64,
    /// Thermal capacity per cell [J/degC]
    pub cell_heat_capacity: f64,
    /// Operating SoC window
    pub soc_min: f64,
    pub soc_max: f64,
    /// Pack current bounds [A] (positive = discharge)
    pub i_min: f64,
    pub i_max: f64,
    /// Open-circuit voltage vs SoC [V, pack]
    pub ocv: Table1d,
    /// Internal resistance vs (SoC, temperature) [ohm, pack], per direction
    pub resistance_discharge: Table2d,
    pub resistance_charge: Table2d,
    /// Entropy coefficient dV/dT vs SoC [V/K, pack]
    pub entropy: Table1d,
}

impl BatteryParams {
    /// Validate the structural invariants of the parameter set.
    pub fn validate(&self) -> Result<(), BatteryError> {
        self.ocv.require_increasing()?;
        self.resistance_discharge.require_positive()?;
        self.resistance_charge.require_positive()?;
        assert!(
            self.capacity_pack > 0.0 && self.n_cells > 0.0 && self.cell_heat_capacity > 0.0,
            "pack constants must be positive"
        );
        assert!(self.soc_min < self.soc_max);
        Ok(())
    }

    /// Pack thermal capacity N_cell * C_cell [J/degC].
    pub fn pack_heat_capacity(&self) -> f64 {
        self.n_cells * self.cell_heat_capacity
    }

    pub fn open_circuit_voltage(&self, soc: f64) -> f64 {
        self.ocv.eval(soc)
    }

    pub fn resistance(&self, soc: f64, t_bat: f64, dir: CurrentDirection) -> f64 {
        match dir {
            CurrentDirection::Discharge => self.resistance_discharge.eval(soc, t_bat),
            CurrentDirection::Charge => self.resistance_charge.eval(soc, t_bat),
        }
    }

    pub fn entropy_coefficient(&self, soc: f64) -> f64 {
        self.entropy.eval(soc)
    }
}

/// Instantaneous pack state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryState {
    /// State of charge [0..1]
    pub soc: f64,
    /// Pack temperature [degC]
    pub t_bat: f64,
    /// Accumulated capacity-loss fraction [0..0.2]
    pub q_loss: f64,
    /// Terminal voltage [V]
    pub v_term: f64,
    /// Pack current [A], positive = discharging
    pub i_bat: f64,
}

impl BatteryState {
    /// Fresh pack at a given temperature and SoC.
    pub fn fresh(soc: f64, t_bat: f64) -> Self {
        Self {
            soc,
            t_bat,
            q_loss: Q_LOSS_SEED,
            v_term: 0.0,
            i_bat: 0.0,
        }
    }
}

/// Solve the Rint power equation P = V_oc*I - I^2*R for the current.
///
/// Takes the smaller (high-voltage branch) root; the larger root is the
/// non-physical short-circuit branch. The resistance is looked up with the
/// direction implied by the sign of `p_bat`.
pub fn current_from_power(
    params: &BatteryParams,
    p_bat: f64,
    soc: f64,
    t_bat: f64,
) -> Result<f64, BatteryError> {
    if p_bat == 0.0 {
        return Ok(0.0);
    }
    let dir = if p_bat > 0.0 {
        CurrentDirection::Discharge
    } else {
        CurrentDirection::Charge
    };
    let v_oc = params.open_circuit_voltage(soc);
    let r = params.resistance(soc, t_bat, dir);
    let disc = v_oc * v_oc - 4.0 * r * p_bat;
    if disc < 0.0 {
        return Err(BatteryError::PowerInfeasible {
            p_bat,
            v_oc,
            r,
        });
    }
    Ok((v_oc - disc.sqrt()) / (2.0 * r))
}

/// Coulomb-counting SoC update. No clamping: bound violations are the
/// caller's to detect and report.
pub fn soc_step(params: &BatteryParams, soc: f64, i_bat: f64, ts: f64) -> f64 {
    soc - i_bat * ts / (3600.0 * params.capacity_pack)
}

/// Capacity-loss increment over one sample step.
///
/// Returns zero at zero current; strictly positive otherwise. `q_loss_prev`
/// must be positive (see [`Q_LOSS_SEED`]).
pub fn aging_step(
    params: &BatteryParams,
    i_bat: f64,
    t_bat: f64,
    q_loss_prev: f64,
    ts: f64,
) -> Result<f64, BatteryError> {
    if q_loss_prev <= 0.0 {
        return Err(BatteryError::AgingDomain(q_loss_prev));
    }
    if i_bat == 0.0 {
        return Ok(0.0);
    }
    let c_rate = i_bat.abs() / params.capacity_pack;
    let t_k = t_bat + CELSIUS_TO_KELVIN;
    let prefactor = 9.78e-4 * i_bat.abs() * ts / 3600.0;
    let arrhenius = ((-15162.0 + 1516.0 * c_rate) / (0.849 * GAS_CONSTANT * t_k)).exp();
    Ok(prefactor * arrhenius * q_loss_prev.powf(-0.1779))
}

/// Heat generation: joule term plus reversible entropy term [W].
pub fn heat_generation(params: &BatteryParams, i_bat: f64, t_bat: f64, soc: f64) -> f64 {
    if i_bat == 0.0 {
        return 0.0;
    }
    let dir = if i_bat > 0.0 {
        CurrentDirection::Discharge
    } else {
        CurrentDirection::Charge
    };
    let r = params.resistance(soc, t_bat, dir);
    let t_k = t_bat + CELSIUS_TO_KELVIN;
    i_bat * i_bat * r + i_bat * t_k * params.entropy_coefficient(soc)
}

/// Forward-Euler pack temperature update [degC].
pub fn temperature_step(params: &BatteryParams, t_bat: f64, q_gen: f64, q_cool: f64, ts: f64) -> f64 {
    t_bat + ts * (q_gen - q_cool) / params.pack_heat_capacity()
}
