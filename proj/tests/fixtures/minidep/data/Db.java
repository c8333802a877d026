package com.shop.data;

public class Db {
    public static void trace(String message) {
    }
}
