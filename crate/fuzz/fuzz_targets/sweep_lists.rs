#![no_main]

use aoi_cli::sweep::{self, Axis, SweepSpec};
use aoi_core::SystemParams;
use libfuzzer_sys::fuzz_target;

// Lines: axis, values, tasks.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mut lines = text.lines();
    let axis = lines.next().map(str::parse::<Axis>);
    let values = lines.next().map(sweep::parse_values);
    let tasks = lines.next().map(sweep::parse_tasks);
    if let (Some(Ok(axis)), Some(Ok(values)), Some(Ok(tasks))) = (axis, values, tasks) {
        if let Ok(spec) = SweepSpec::new(axis, values, tasks) {
            if let Ok(points) = spec.points(SystemParams::default()) {
                assert_eq!(points.len(), spec.values.len());
            }
        }
    }
});
