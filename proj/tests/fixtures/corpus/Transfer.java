package com.acme.bank;

import java.sql.Connection;
import java.sql.PreparedStatement;
import java.sql.SQLException;

public class Transfer {
    Connection conn;

    public void move(String from, String to, long cents) throws SQLException {
        conn.open();
        conn.setAutoCommit(false);
        try {
            PreparedStatement debit = conn.prepareStatement("update acct set bal = bal - ? where id = ?");
            debit.setLong(1, cents);
            debit.setString(2, from);
            debit.executeUpdate();
            PreparedStatement credit = conn.prepareStatement("update acct set bal = bal + ? where id = ?");
            credit.setLong(1, cents);
            credit.setString(2, to);
            credit.executeUpdate();
            conn.commit();
        } catch (SQLException e) {
            conn.rollback();
            throw e;
        } finally {
            conn.close();
        }
    }
}
