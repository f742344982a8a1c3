//! Naive reference checkers, written from the fairness definitions without
//! reusing any library shortcut.

#![allow(dead_code)]

use online_fair::{Allocation, ExtendedFactor, Instance, Value};

fn ratio(num: &Value, den: &Value) -> ExtendedFactor {
    if den.is_zero() {
        ExtendedFactor::Infinite
    } else {
        ExtendedFactor::Finite(num / den)
    }
}

fn bigger(a: ExtendedFactor, b: ExtendedFactor) -> ExtendedFactor {
    if a >= b {
        a
    } else {
        b
    }
}

fn smaller(a: ExtendedFactor, b: ExtendedFactor) -> ExtendedFactor {
    if a <= b {
        a
    } else {
        b
    }
}

fn sum(inst: &Instance, agent: usize, goods: impl Iterator<Item = usize>) -> Value {
    let mut s = Value::zero();
    for g in goods {
        s += inst.value(agent, g);
    }
    s
}

fn members(alloc: &Allocation, agent: usize) -> Vec<usize> {
    (0..alloc.m()).filter(|&g| alloc.owner()[g] == agent).collect()
}

/// `exists_removal`: EF1 when true (some good may be dropped), EFX when false
/// (every good must work).
fn envy(inst: &Instance, alloc: &Allocation, exists_removal: bool) -> ExtendedFactor {
    let mut factor = ExtendedFactor::Infinite;
    for i in 0..inst.n() {
        let own = sum(inst, i, members(alloc, i).into_iter());
        for j in (0..inst.n()).filter(|&j| j != i) {
            let rival = members(alloc, j);
            if rival.is_empty() {
                continue;
            }
            let mut pair: Option<ExtendedFactor> = None;
            for &g in &rival {
                let rest = sum(inst, i, rival.iter().copied().filter(|&h| h != g));
                let r = ratio(&own, &rest);
                pair = Some(match pair {
                    None => r,
                    Some(p) if exists_removal => bigger(p, r),
                    Some(p) => smaller(p, r),
                });
            }
            factor = smaller(factor, pair.unwrap());
        }
    }
    factor
}

pub fn naive_ef1(inst: &Instance, alloc: &Allocation) -> ExtendedFactor {
    envy(inst, alloc, true)
}

pub fn naive_efx(inst: &Instance, alloc: &Allocation) -> ExtendedFactor {
    envy(inst, alloc, false)
}

pub fn naive_prop1(inst: &Instance, alloc: &Allocation) -> ExtendedFactor {
    let mut factor = ExtendedFactor::Infinite;
    let n = Value::integer(inst.n() as i64);
    for i in 0..inst.n() {
        let own = sum(inst, i, members(alloc, i).into_iter());
        let share = sum(inst, i, 0..inst.m()) / &n;
        let mut best: Option<ExtendedFactor> = None;
        for g in (0..inst.m()).filter(|&g| alloc.owner()[g] != i) {
            let r = ratio(&(&own + inst.value(i, g)), &share);
            best = Some(match best {
                None => r,
                Some(b) => bigger(b, r),
            });
        }
        if let Some(b) = best {
            factor = smaller(factor, b);
        }
    }
    factor
}

/// Maximin share by counting through all `n^m` assignments with the last
/// good as the fastest-moving digit.
pub fn naive_mms(values: &[Value], n: usize) -> Value {
    let m = values.len();
    let mut digits = vec![0usize; m];
    let mut best = Value::zero();
    loop {
        let mut loads = vec![Value::zero(); n];
        for (g, &b) in digits.iter().enumerate() {
            loads[b] += &values[g];
        }
        let low = loads.into_iter().min().unwrap();
        if low > best {
            best = low;
        }
        let mut k = m;
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Under identical ordering turn `k` takes every agent's `k`-th largest value,
/// so agent `i` is promised the values at its own turns.
pub fn ido_benchmark(inst: &Instance, turns: &[usize]) -> (Vec<Value>, Vec<usize>) {
    let mut values = vec![Value::zero(); inst.n()];
    let mut sizes = vec![0; inst.n()];
    for (i, (value, size)) in values.iter_mut().zip(&mut sizes).enumerate() {
        let mut col = inst.column(i);
        col.sort_by(|a, b| b.cmp(a));
        for (k, &agent) in turns.iter().enumerate() {
            if agent == i {
                *value += &col[k];
                *size += 1;
            }
        }
    }
    (values, sizes)
}
