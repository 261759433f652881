use super::{Application, ApplicationProfile, MaxUsersTable, RsuType};

/// Three omni-directional 802.11p antennas with their measured effective
/// radio ranges.
pub fn default_catalog() -> Vec<RsuType> {
    vec![
        RsuType {
            id: 1,
            label: "Echo Series Omni Site 6dBi".to_string(),
            gain_dbi: 6.0,
            cost_usd: 121.70,
            err_m: 243.12,
        },
        RsuType {
            id: 2,
            label: "Echo Series Omni Site 9dBi".to_string(),
            gain_dbi: 9.0,
            cost_usd: 139.20,
            err_m: 338.70,
        },
        RsuType {
            id: 3,
            label: "Echo Series Omni Site 12dBi".to_string(),
            gain_dbi: 12.0,
            cost_usd: 227.50,
            err_m: 503.93,
        },
    ]
}

/// Vehicles served per RSU type and application.
pub fn default_max_users() -> MaxUsersTable {
    let rows: [(u32, [u32; 3]); 3] = [(1, [45, 34, 31]), (2, [45, 44, 34]), (3, [46, 52, 37])];
    let mut table = MaxUsersTable::new();
    for (rsu_type, users) in rows {
        for (app, mu) in Application::ALL.into_iter().zip(users) {
            table.insert(rsu_type, app, mu);
        }
    }
    table
}

/// QoS requirements of the three application classes.
pub fn profile(app: Application) -> ApplicationProfile {
    let (packet_bytes, flow_kbps, e2ed_ms_max, pdr_min_pct) = match app {
        Application::Data => (238, 19.0, 100.0, 100.0),
        Application::Voice => (238, 25.0, 400.0, 16.0),
        Application::Video => (791, 384.0, 400.0, 8.33),
    };
    ApplicationProfile {
        id: app,
        packet_bytes,
        flow_kbps,
        e2ed_ms_max,
        pdr_min_pct,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_matches_published_antennas() {
        let cat = default_catalog();
        let costs: Vec<f64> = cat.iter().map(|t| t.cost_usd).collect();
        let errs: Vec<f64> = cat.iter().map(|t| t.err_m).collect();
        assert_eq!(costs, vec![121.70, 139.20, 227.50]);
        assert_eq!(errs, vec![243.12, 338.70, 503.93]);
    }

    #[test]
    fn max_users_table_is_total() {
        let mu = default_max_users();
        assert_eq!(mu.len(), 9);
        assert_eq!(mu.get(2, Application::Video), Some(34));
        assert_eq!(mu.get(3, Application::Voice), Some(52));
        assert_eq!(mu.get(1, Application::Data), Some(45));
    }
}
